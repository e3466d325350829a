#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace capm {

/// Runs the capm command line: regions, classify, plan, simulate, report.
/// Data goes to `out`, diagnostics to `err`. Exit codes: 0 success, 1 usage
/// error, 2 config error, 3 runtime/infeasibility error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace capm
