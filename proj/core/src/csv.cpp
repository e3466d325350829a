#include "capm/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "capm/errors.hpp"

namespace capm {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

int planner_index(const std::string& name) {
  if (name == "a") return 0;
  if (name == "b") return 1;
  if (name == "c") return 2;
  return -1;
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

std::string format_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> trials) {
  out << kTrialsCsvHeader << "\n";
  for (const TrialRecord& t : trials) {
    out << t.trial_id << ',' << format_g6(t.path_length) << ','
        << planner_name(t.planner) << ',';
    if (t.error.empty()) {
      out << branch_name(t.branch);
    }
    out << ',' << (t.success ? 1 : 0) << ',';
    if (t.error.empty()) {
      out << format_g6(t.expected_cost) << ',' << format_g6(t.realized_cost);
    } else {
      out << ',';
    }
    out << ',' << format_g6(t.troi_x) << ',' << format_g6(t.troi_y) << ','
        << format_g6(t.r_w) << ',' << format_g6(t.mpoi_x) << ','
        << format_g6(t.mpoi_y) << ',';
    if (t.error.empty()) {
      out << format_g6(t.x1_x) << ',' << format_g6(t.x1_y);
    } else {
      out << ',';
    }
    out << ',';
    if (t.error.empty() && t.has_x3) {
      out << format_g6(t.x3_x) << ',' << format_g6(t.x3_y);
    } else {
      out << ',';
    }
    out << "\n";
  }
}

void write_metrics_csv(std::ostream& out, const MetricsTable& m) {
  out << kMetricsCsvHeader << "\n";
  const char* names[3] = {"a", "b", "c"};
  for (int pk = 0; pk < 3; ++pk) {
    for (std::size_t p = 0; p < m.path_lengths.size(); ++p) {
      out << names[pk] << ',' << format_g6(m.path_lengths[p]) << ','
          << format_g6(m.success_pct[pk][p]) << ','
          << format_g6(m.avg_cost[pk][p]) << "\n";
    }
    out << names[pk] << ",all," << format_g6(m.pooled_success_pct[pk]) << ','
        << format_g6(m.pooled_avg_cost[pk]) << "\n";
  }
  for (std::size_t p = 0; p < m.path_lengths.size(); ++p) {
    out << "eta_bc," << format_g6(m.path_lengths[p]) << ",,"
        << format_g6(m.eta_bc[p]) << "\n";
  }
}

MetricsTable read_metrics_csv(std::istream& in) {
  MetricsTable m;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("metrics csv is empty");
  // tolerate a trailing \r from files written on other platforms
  auto chomp = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };
  chomp(line);
  if (line != kMetricsCsvHeader) {
    throw ParseError("unexpected metrics csv header: " + line);
  }
  struct Row {
    std::string planner;
    std::string length;
    std::string success;
    std::string avg;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    chomp(line);
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) throw ParseError("bad metrics csv row: " + line);
    rows.push_back(Row{f[0], f[1], f[2], f[3]});
  }
  for (const Row& r : rows) {
    if (planner_index(r.planner) == 0 && r.length != "all") {
      m.path_lengths.push_back(std::stod(r.length));
    }
  }
  const std::size_t n = m.path_lengths.size();
  for (int pk = 0; pk < 3; ++pk) {
    m.success_pct[pk].assign(n, 0.0);
    m.avg_cost[pk].assign(n, 0.0);
  }
  m.eta_bc.assign(n, 0.0);
  auto length_index = [&](const std::string& text) {
    const double v = std::stod(text);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(m.path_lengths[i] - v) < 1e-9) return i;
    }
    throw ParseError("unknown path length in metrics csv: " + text);
  };
  for (const Row& r : rows) {
    if (r.planner == "eta_bc") {
      m.eta_bc[length_index(r.length)] = std::stod(r.avg);
      continue;
    }
    const int pk = planner_index(r.planner);
    if (pk < 0) throw ParseError("unknown planner in metrics csv: " + r.planner);
    if (r.length == "all") {
      m.pooled_success_pct[pk] = std::stod(r.success);
      m.pooled_avg_cost[pk] = std::stod(r.avg);
    } else {
      const std::size_t p = length_index(r.length);
      m.success_pct[pk][p] = std::stod(r.success);
      m.avg_cost[pk][p] = std::stod(r.avg);
    }
  }
  return m;
}

void print_report(std::ostream& out, const MetricsTable& m) {
  const char* names[3] = {"a", "b", "c"};
  out << std::left << std::setw(8) << "alg" << std::right << std::setw(7)
      << "%";
  for (double L : m.path_lengths) {
    std::ostringstream col;
    col << std::fixed << std::setprecision(2) << L;
    out << std::setw(8) << col.str();
  }
  out << "\n";
  for (int pk = 0; pk < 3; ++pk) {
    std::ostringstream succ;
    succ << std::fixed << std::setprecision(1) << m.pooled_success_pct[pk];
    out << std::left << std::setw(8) << names[pk] << std::right
        << std::setw(7) << succ.str();
    for (std::size_t p = 0; p < m.path_lengths.size(); ++p) {
      std::ostringstream col;
      col << std::fixed << std::setprecision(2) << m.avg_cost[pk][p];
      out << std::setw(8) << col.str();
    }
    out << "\n";
  }
  out << std::left << std::setw(8) << "eta_bc" << std::right << std::setw(7)
      << "";
  for (std::size_t p = 0; p < m.path_lengths.size(); ++p) {
    std::ostringstream col;
    col << std::fixed << std::setprecision(2) << m.eta_bc[p];
    out << std::setw(8) << col.str();
  }
  out << "\n";
}

}  // namespace capm
