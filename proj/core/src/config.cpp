#include "capm/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "capm/errors.hpp"

namespace capm {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + v + "'");
  }
  if (pos != v.size()) throw ParseError("trailing text in number: '" + v + "'");
  return out;
}

long long parse_int(const std::string& v) {
  std::size_t pos = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + v + "'");
  }
  if (pos != v.size())
    throw ParseError("trailing text in integer: '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError("not a boolean: '" + v + "'");
}

std::vector<double> parse_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_double(trim(item)));
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

struct KeyEntry {
  const char* name;
  const char* default_text;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

const std::vector<KeyEntry>& key_table() {
  static const std::vector<KeyEntry> table = {
      {"n_trials", "1000",
       [](ExperimentConfig& c, const std::string& v) {
         c.n_trials = static_cast<int>(parse_int(v));
       }},
      {"workspace", "3.0",
       [](ExperimentConfig& c, const std::string& v) {
         c.workspace = parse_double(v);
       }},
      {"r_w_range", "0.2,0.3",
       [](ExperimentConfig& c, const std::string& v) {
         const auto list = parse_list(v);
         if (list.size() != 2) throw ParseError("r_w_range needs two values");
         c.r_w_min = list[0];
         c.r_w_max = list[1];
       }},
      {"path_lengths", "2.75,3.25,3.75,4.25,4.75",
       [](ExperimentConfig& c, const std::string& v) {
         c.path_lengths = parse_list(v);
       }},
      {"master_seed", "1",
       [](ExperimentConfig& c, const std::string& v) {
         c.master_seed = static_cast<std::uint64_t>(parse_int(v));
       }},
      {"mc_samples", "2000",
       [](ExperimentConfig& c, const std::string& v) {
         c.mc_samples = static_cast<int>(parse_int(v));
       }},
      {"sigma_mode", "squared",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "linear") c.sigma_mode = SigmaMode::Linear;
         else if (v == "squared") c.sigma_mode = SigmaMode::Squared;
         else throw ParseError("sigma_mode must be linear or squared");
       }},
      {"sigma_truncate", "true",
       [](ExperimentConfig& c, const std::string& v) {
         c.sigma_truncate = parse_bool(v);
       }},
      {"body_height", "0.8",
       [](ExperimentConfig& c, const std::string& v) {
         c.body_height = parse_double(v);
       }},
      {"task.delta", "0.05",
       [](ExperimentConfig& c, const std::string& v) {
         c.task.delta = parse_double(v);
       }},
      {"task.eps_min", "0.05",
       [](ExperimentConfig& c, const std::string& v) {
         c.task.eps_min = parse_double(v);
       }},
      {"task.eps_max", "0.10",
       [](ExperimentConfig& c, const std::string& v) {
         c.task.eps_max = parse_double(v);
       }},
      {"task.xi", "3",
       [](ExperimentConfig& c, const std::string& v) {
         c.task.xi = static_cast<int>(parse_int(v));
       }},
      {"task.aim_tol_deg", "180",
       [](ExperimentConfig& c, const std::string& v) {
         c.task.aim_tol = parse_double(v) * kPi / 180.0;
       }},
      {"energy.alpha", "1",
       [](ExperimentConfig& c, const std::string& v) {
         c.energy.alpha = parse_double(v);
       }},
      {"energy.gamma", "2",
       [](ExperimentConfig& c, const std::string& v) {
         c.energy.gamma = parse_double(v);
       }},
      {"energy.beta", "0",
       [](ExperimentConfig& c, const std::string& v) {
         c.energy.beta = parse_double(v);
       }},
      {"energy.metric", "linear",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "linear") c.energy.metric = DistanceMetric::Linear;
         else if (v == "squared") c.energy.metric = DistanceMetric::Squared;
         else throw ParseError("energy.metric must be linear or squared");
       }},
      {"camera.focal_u", "600",
       [](ExperimentConfig& c, const std::string& v) {
         c.camera.focal_u = parse_double(v);
       }},
      {"camera.focal_v", "600",
       [](ExperimentConfig& c, const std::string& v) {
         c.camera.focal_v = parse_double(v);
       }},
      {"camera.center_u", "320",
       [](ExperimentConfig& c, const std::string& v) {
         c.camera.center_u = parse_double(v);
       }},
      {"camera.center_v", "240",
       [](ExperimentConfig& c, const std::string& v) {
         c.camera.center_v = parse_double(v);
       }},
      {"camera.width", "640",
       [](ExperimentConfig& c, const std::string& v) {
         c.camera.width = static_cast<int>(parse_int(v));
       }},
      {"camera.height", "480",
       [](ExperimentConfig& c, const std::string& v) {
         c.camera.height = static_cast<int>(parse_int(v));
       }},
      {"arm.reach_min", "0.15",
       [](ExperimentConfig& c, const std::string& v) {
         c.arm.reach_min = parse_double(v);
       }},
      {"arm.reach_max", "0.74",
       [](ExperimentConfig& c, const std::string& v) {
         c.arm.reach_max = parse_double(v);
       }},
      {"arm.shoulder_x", "0",
       [](ExperimentConfig& c, const std::string& v) {
         c.arm.shoulder_offset.x() = parse_double(v);
       }},
      {"arm.shoulder_y", "0",
       [](ExperimentConfig& c, const std::string& v) {
         c.arm.shoulder_offset.y() = parse_double(v);
       }},
      {"arm.shoulder_z", "0",
       [](ExperimentConfig& c, const std::string& v) {
         c.arm.shoulder_offset.z() = parse_double(v);
       }},
      {"grid.rho_steps", "256",
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.rho_steps = static_cast<int>(parse_int(v));
       }},
      {"grid.standoff_steps", "32",
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.standoff_steps = static_cast<int>(parse_int(v));
       }},
      {"grid.height_steps", "24",
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.height_steps = static_cast<int>(parse_int(v));
       }},
      {"grid.refine_levels", "2",
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.refine_levels = static_cast<int>(parse_int(v));
       }},
      {"grid.refine_factor", "4",
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.refine_factor = static_cast<int>(parse_int(v));
       }},
      {"grid.inner_refine_factor", "4",
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.inner_refine_factor = static_cast<int>(parse_int(v));
       }},
      {"grid.rho_margin", "1.0",
       [](ExperimentConfig& c, const std::string& v) {
         c.grid.rho_margin = parse_double(v);
       }},
      {"planner.angular_steps", "64",
       [](ExperimentConfig& c, const std::string& v) {
         c.planner_grid.angular_steps = static_cast<int>(parse_int(v));
       }},
      {"planner.radial_steps", "16",
       [](ExperimentConfig& c, const std::string& v) {
         c.planner_grid.radial_steps = static_cast<int>(parse_int(v));
       }},
      {"planner.refine_factor", "4",
       [](ExperimentConfig& c, const std::string& v) {
         c.planner_grid.refine_factor = static_cast<int>(parse_int(v));
       }},
  };
  return table;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& msg) { throw RangeError(msg); };
  if (cfg.n_trials < 1) fail("n_trials must be >= 1");
  if (cfg.workspace <= 0.0) fail("workspace must be positive");
  if (!(cfg.r_w_min > 0.0 && cfg.r_w_min <= cfg.r_w_max))
    fail("r_w_range must be ordered and positive");
  if (cfg.path_lengths.empty()) fail("path_lengths must be nonempty");
  for (double L : cfg.path_lengths) {
    if (L <= 0.0) fail("path lengths must be positive");
  }
  if (cfg.mc_samples < 1) fail("mc_samples must be >= 1");
  if (cfg.body_height <= 0.0) fail("body_height must be positive");
  if (!(cfg.task.delta > 0.0 && cfg.task.delta < 1.0))
    fail("task.delta must lie in (0, 1)");
  if (!(cfg.task.eps_min >= 0.0 && cfg.task.eps_min < cfg.task.eps_max))
    fail("task.eps_min/eps_max must satisfy 0 <= min < max");
  if (cfg.task.xi < 1) fail("task.xi must be >= 1");
  if (!(cfg.task.aim_tol > 0.0)) fail("task.aim_tol_deg must be positive");
  if (cfg.energy.alpha < 0.0) fail("energy.alpha must be >= 0");
  if (!(cfg.energy.gamma > 0.0)) fail("energy.gamma must be positive");
  if (cfg.energy.beta < 0.0) fail("energy.beta must be >= 0");
  if (!(cfg.camera.focal_u > 0.0 && cfg.camera.focal_v > 0.0))
    fail("camera focal lengths must be positive");
  if (cfg.camera.width < 2 || cfg.camera.height < 2)
    fail("camera resolution must be at least 2x2");
  if (cfg.camera.center_u < 1.0 || cfg.camera.center_u > cfg.camera.width ||
      cfg.camera.center_v < 1.0 || cfg.camera.center_v > cfg.camera.height)
    fail("camera principal point must lie inside the image");
  if (!(cfg.arm.reach_min >= 0.0 && cfg.arm.reach_min < cfg.arm.reach_max))
    fail("arm reach must satisfy 0 <= min < max");
  if (cfg.grid.rho_steps < 2 || cfg.grid.standoff_steps < 2 ||
      cfg.grid.height_steps < 1)
    fail("grid step counts are too small");
  if (cfg.grid.refine_levels < 0 || cfg.grid.refine_factor < 2 ||
      cfg.grid.inner_refine_factor < 1)
    fail("grid refinement parameters are out of range");
  if (cfg.grid.rho_margin < 0.0) fail("grid.rho_margin must be >= 0");
  if (cfg.planner_grid.angular_steps < 4 || cfg.planner_grid.radial_steps < 2)
    fail("planner grid is too small");
  if (cfg.planner_grid.refine_factor < 1)
    fail("planner.refine_factor must be >= 1");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;

    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value =
        trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty key");
    }
    bool found = false;
    for (const KeyEntry& entry : key_table()) {
      if (key == entry.name) {
        try {
          entry.set(cfg, value);
        } catch (const ParseError& e) {
          throw ParseError("line " + std::to_string(line_no) + ", key '" +
                           key + "': " + e.what());
        }
        found = true;
        break;
      }
    }
    if (!found) {
      throw UnknownKey("line " + std::to_string(line_no) +
                       ": unknown key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_usage() {
  std::string out;
  for (const KeyEntry& entry : key_table()) {
    out += entry.name;
    out += " = ";
    out += entry.default_text;
    out += "\n";
  }
  return out;
}

}  // namespace capm
