#include "cli_app.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "capm/config.hpp"
#include "capm/csv.hpp"
#include "capm/errors.hpp"

namespace capm {
namespace {

const char* kind_name(KeyStateKind k) {
  switch (k) {
    case KeyStateKind::BodyMove: return "body_move";
    case KeyStateKind::ArmPerceive: return "arm_perceive";
    case KeyStateKind::ArmManipulate: return "arm_manipulate";
    case KeyStateKind::ArmHold: return "arm_hold";
  }
  return "?";
}

ExperimentConfig config_from(const std::string& path) {
  if (path.empty()) {
    ExperimentConfig cfg;
    validate_config(cfg);
    return cfg;
  }
  return load_config_file(path);
}

Troi troi_from(const std::vector<double>& v) {
  Troi troi;
  troi.center = Vec3(v[0], v[1], 0.0);
  troi.radius = v[2];
  if (troi.radius <= 0.0) throw RangeError("TROI radius must be positive");
  return troi;
}

void print_annulus(std::ostream& out, const char* label, const Annulus& a) {
  out << label << ' ';
  if (a.empty) {
    out << "empty\n";
    return;
  }
  out << format_g6(a.center.x()) << ' ' << format_g6(a.center.y()) << ' '
      << format_g6(a.r_inner) << ' ' << format_g6(a.r_outer) << "\n";
}

void print_plan(std::ostream& out, const Plan& plan) {
  for (const KeyState& s : plan.states) {
    out << s.time_index << ", " << kind_name(s.kind) << ", "
        << format_g6(s.body.position.x()) << ", "
        << format_g6(s.body.position.y()) << ", " << format_g6(s.body.yaw);
    if (s.ee) {
      out << ", " << format_g6(s.ee->position.x()) << ", "
          << format_g6(s.ee->position.y()) << ", "
          << format_g6(s.ee->position.z());
    }
    out << "\n";
  }
}

int do_regions(const std::string& config_path, const std::vector<double>& troi,
               std::ostream& out) {
  const ExperimentConfig cfg = config_from(config_path);
  const Troi t = troi_from(troi);
  const Annulus ro = compute_ro(t, cfg.arm, cfg.camera, cfg.task, cfg.grid,
                                cfg.body_height);
  const Annulus rm = compute_rm(t.center_xy(), cfg.arm, cfg.task, cfg.grid,
                                cfg.body_height);
  print_annulus(out, "R_o", ro);
  print_annulus(out, "R_m", rm);
  return 0;
}

int do_classify(const std::string& config_path,
                const std::vector<double>& troi,
                const std::vector<double>& mpoi, std::ostream& out) {
  const ExperimentConfig cfg = config_from(config_path);
  const Troi t = troi_from(troi);
  const Vec2 m =
      mpoi.empty() ? t.center_xy() : Vec2(mpoi[0], mpoi[1]);
  const Annulus ro = compute_ro(t, cfg.arm, cfg.camera, cfg.task, cfg.grid,
                                cfg.body_height);
  const Annulus rm = compute_rm(m, cfg.arm, cfg.task, cfg.grid,
                                cfg.body_height);
  const bool inside = t.contains_xy(m);
  out << problem_type_name(classify_problem_type(ro, rm, inside)) << "\n";
  return 0;
}

int do_plan(const std::string& config_path, const std::string& planner,
            const std::vector<double>& troi, const std::vector<double>& start,
            const std::vector<double>& end, std::uint64_t seed_override,
            bool has_seed, std::ostream& out) {
  const ExperimentConfig cfg = config_from(config_path);
  const PlannerContext ctx = make_planner_context(cfg);
  const Troi t = troi_from(troi);

  BodyPose s, e;
  s.position = Vec2(start[0], start[1]);
  s.yaw = start.size() > 2 ? start[2] : 0.0;
  s.body_height = cfg.body_height;
  e.position = Vec2(end[0], end[1]);
  e.yaw = end.size() > 2 ? end[2] : s.yaw;
  e.body_height = cfg.body_height;

  const Annulus rm_center = ctx.rm_shape.translated(t.center_xy());
  Plan plan;
  if (planner == "a") {
    plan = plan_deterministic(s, e, t, rm_center, ctx);
  } else {
    const Annulus ro = compute_ro(t, cfg.arm, cfg.camera, cfg.task, cfg.grid,
                                  cfg.body_height);
    if (planner == "b") {
      plan = plan_decoupled(s, e, t, ro, rm_center, ctx);
    } else {
      RngStream rng(has_seed ? seed_override : cfg.master_seed, 0);
      plan = plan_capm(s, e, t, ro, ctx.rm_shape, ctx.mpoi_distribution(t),
                       ctx, rng);
    }
  }
  print_plan(out, plan);
  return 0;
}

int do_simulate(const std::string& config_path, const std::string& out_dir,
                std::uint64_t seed_override, bool has_seed, int threads,
                std::ostream& err) {
  ExperimentConfig cfg = config_from(config_path);
  if (has_seed) cfg.master_seed = seed_override;
  const ExperimentResult result = run_experiment(cfg, threads);
  for (const std::string& e : result.errors) {
    err << "trial error: " << e << "\n";
  }
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(out_dir + "/trials.csv");
    if (!f) throw Error("cannot write " + out_dir + "/trials.csv");
    write_trials_csv(f, result.trials);
  }
  {
    std::ofstream f(out_dir + "/metrics.csv");
    if (!f) throw Error("cannot write " + out_dir + "/metrics.csv");
    write_metrics_csv(f, result.metrics);
  }
  return 0;
}

int do_report(const std::string& in_dir, std::ostream& out) {
  std::ifstream f(in_dir + "/metrics.csv");
  if (!f) throw Error("cannot open " + in_dir + "/metrics.csv");
  const MetricsTable table = read_metrics_csv(f);
  print_report(out, table);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"capm: base-placement planning under coupled perception and "
               "manipulation constraints"};
  app.require_subcommand(1);
  std::ostringstream footer;
  footer << "Config file keys (flat key = value lines, '#' comments) and "
            "their defaults:\n"
         << config_usage();
  app.footer(footer.str());

  std::string config_path;
  std::vector<double> troi, mpoi, start, end;
  std::string planner = "c";
  std::string out_dir = ".", in_dir = ".";
  std::uint64_t seed = 0;
  bool has_seed = false;
  int threads = 0;

  CLI::App* regions = app.add_subcommand(
      "regions", "Print the observation and manipulation annuli for a TROI");
  regions->add_option("--config", config_path, "Config file");
  regions->add_option("--troi", troi, "TROI as x,y,r")
      ->required()
      ->delimiter(',')
      ->expected(3);

  CLI::App* classify = app.add_subcommand(
      "classify", "Classify the problem type from the region relationship");
  classify->add_option("--config", config_path, "Config file");
  classify->add_option("--troi", troi, "TROI as x,y,r")
      ->required()
      ->delimiter(',')
      ->expected(3);
  classify->add_option("--mpoi", mpoi, "MPOI as x,y (defaults to the center)")
      ->delimiter(',')
      ->expected(2);

  CLI::App* plan = app.add_subcommand(
      "plan", "Print the planned key-state sequence for one scene");
  plan->add_option("--config", config_path, "Config file");
  plan->add_option("--planner", planner, "Planner: a, b, or c")
      ->check(CLI::IsMember({"a", "b", "c"}));
  plan->add_option("--troi", troi, "TROI as x,y,r")
      ->required()
      ->delimiter(',')
      ->expected(3);
  plan->add_option("--start", start, "Start pose x,y[,yaw]")
      ->required()
      ->delimiter(',')
      ->expected(2, 3);
  plan->add_option("--end", end, "End pose x,y[,yaw]")
      ->required()
      ->delimiter(',')
      ->expected(2, 3);
  plan->add_option("--seed", seed, "Sample seed for planner c")
      ->each([&](const std::string&) { has_seed = true; });

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the seeded three-planner experiment");
  simulate->add_option("--config", config_path, "Config file");
  simulate->add_option("--out", out_dir, "Output directory")->required();
  simulate->add_option("--seed", seed, "Override master_seed")
      ->each([&](const std::string&) { has_seed = true; });
  simulate->add_option("--threads", threads,
                       "Worker threads (0 = hardware count)");

  CLI::App* report = app.add_subcommand(
      "report", "Print the summary table from a simulate output directory");
  report->add_option("--in", in_dir, "Directory containing metrics.csv")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (regions->parsed()) return do_regions(config_path, troi, out);
    if (classify->parsed()) return do_classify(config_path, troi, mpoi, out);
    if (plan->parsed()) {
      return do_plan(config_path, planner, troi, start, end, seed, has_seed,
                     out);
    }
    if (simulate->parsed()) {
      return do_simulate(config_path, out_dir, seed, has_seed, threads, err);
    }
    if (report->parsed()) return do_report(in_dir, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "no subcommand given\n";
  return 1;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace capm
