#include "cli_app.hpp"

int main(int argc, char** argv) { return capm::run_cli(argc, argv); }
