#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "capm/sim.hpp"

namespace capm {

inline constexpr const char* kTrialsCsvHeader =
    "trial_id,path_length,planner,branch,success,expected_cost,"
    "realized_cost,troi_x,troi_y,r_w,mpoi_x,mpoi_y,x1_x,x1_y,x3_x,x3_y";

inline constexpr const char* kMetricsCsvHeader =
    "planner,path_length,success_rate_pct,avg_cost";

/// RFC-4180 field quoting (applied only when needed).
std::string csv_field(const std::string& s);

/// Decimal text with 6 significant digits.
std::string format_g6(double v);

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> trials);
void write_metrics_csv(std::ostream& out, const MetricsTable& table);

/// Rebuilds the table from metrics.csv content (no recomputation).
MetricsTable read_metrics_csv(std::istream& in);

/// Prints the three-planner summary: one row per planner with the pooled
/// success rate and the per-path-length average costs, then the energy
/// saving row.
void print_report(std::ostream& out, const MetricsTable& table);

}  // namespace capm
