#pragma once

#include <string>
#include <string_view>

#include "capm/sim.hpp"

namespace capm {

/// Parses the flat key = value config format: one pair per line, `#` starts
/// a comment, unknown keys are a hard error, missing keys take the
/// documented defaults. Throws ParseError / UnknownKey / RangeError.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config_file(const std::string& path);

/// Validates the invariants of a fully assembled config.
void validate_config(const ExperimentConfig& cfg);

/// Every config key with its default, one per line.
std::string config_usage();

}  // namespace capm
