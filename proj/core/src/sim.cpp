#include "capm/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "capm/errors.hpp"

namespace capm {
namespace {

// Stream-id tags keep the per-purpose rng streams disjoint.
constexpr std::uint64_t kTroiTag = 0x7401;
constexpr std::uint64_t kMpoiTag = 0x7402;
constexpr std::uint64_t kPlannerTag = 0x7403;

constexpr std::array<PlannerKind, 3> kPlanners = {
    PlannerKind::Deterministic, PlannerKind::Decoupled, PlannerKind::Capm};

}  // namespace

PlannerContext make_planner_context(const ExperimentConfig& cfg) {
  PlannerContext ctx;
  ctx.camera = cfg.camera;
  ctx.arm = cfg.arm;
  ctx.task = cfg.task;
  ctx.energy = cfg.energy;
  ctx.search = cfg.grid;
  ctx.polar = cfg.planner_grid;
  ctx.body_height = cfg.body_height;
  ctx.mc_samples = cfg.mc_samples;
  ctx.sigma_mode = cfg.sigma_mode;
  ctx.sigma_truncate = cfg.sigma_truncate;
  return finalize_context(ctx);
}

std::vector<TrialScene> generate_trials(const ExperimentConfig& cfg) {
  const int n_paths = static_cast<int>(cfg.path_lengths.size());
  std::vector<TrialScene> scenes;
  scenes.reserve(static_cast<std::size_t>(cfg.n_trials) * n_paths);
  const double half = 0.5 * cfg.workspace;

  for (int t = 0; t < cfg.n_trials; ++t) {
    RngStream troi_rng(cfg.master_seed, mix_stream_id(kTroiTag, t));
    Troi troi;
    troi.center = Vec3(-half + cfg.workspace * troi_rng.uniform(),
                       -half + cfg.workspace * troi_rng.uniform(), 0.0);
    troi.radius =
        cfg.r_w_min + (cfg.r_w_max - cfg.r_w_min) * troi_rng.uniform();

    for (int p = 0; p < n_paths; ++p) {
      const int scene_id = t * n_paths + p;
      const double length = cfg.path_lengths[p];
      TrialScene scene;
      scene.troi = troi;
      scene.start.position = Vec2(-0.5 * length, 0.0);
      scene.start.yaw = 0.0;
      scene.start.body_height = cfg.body_height;
      scene.end.position = Vec2(0.5 * length, 0.0);
      scene.end.yaw = 0.0;
      scene.end.body_height = cfg.body_height;

      MpoiDistribution dist;
      dist.mean = troi.center_xy();
      dist.covariance = sigma_for(troi.radius, cfg.sigma_mode);
      dist.truncate_to_troi = cfg.sigma_truncate;
      RngStream mpoi_rng(cfg.master_seed, mix_stream_id(kMpoiTag, scene_id));
      scene.mpoi = sample_mpoi(dist, troi, mpoi_rng);
      scenes.push_back(scene);
    }
  }
  return scenes;
}

double compute_eta(double avg_b, double avg_c) {
  if (avg_c == 0.0) throw DivisionByZero("average cost of planner c is zero");
  return (avg_b - avg_c) / avg_c;
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 4) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int n_threads) {
  const PlannerContext ctx = make_planner_context(cfg);
  const std::vector<TrialScene> scenes = generate_trials(cfg);
  const int n_scenes = static_cast<int>(scenes.size());
  const int n_paths = static_cast<int>(cfg.path_lengths.size());

  ExperimentResult result;
  result.trials.resize(static_cast<std::size_t>(n_scenes) * 3);

  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads <= 0) n_threads = 1;
  }

  auto run_scene = [&](int scene_id, const Annulus* ro) {
    const TrialScene& scene = scenes[static_cast<std::size_t>(scene_id)];
    for (int pk = 0; pk < 3; ++pk) {
      TrialRecord rec;
      rec.trial_id = scene_id;
      rec.path_length = cfg.path_lengths[scene_id % n_paths];
      rec.planner = kPlanners[pk];
      rec.troi_x = scene.troi.center.x();
      rec.troi_y = scene.troi.center.y();
      rec.r_w = scene.troi.radius;
      rec.mpoi_x = scene.mpoi.point.x();
      rec.mpoi_y = scene.mpoi.point.y();
      try {
        RngStream rng(cfg.master_seed,
                      mix_stream_id(kPlannerTag, scene_id * 4 + pk));
        const Plan plan = execute_trial(kPlanners[pk], scene, ctx, rng, ro);
        rec.branch = plan.branch;
        rec.success = plan.success.value_or(false);
        rec.expected_cost = plan.expected_cost;
        rec.realized_cost = plan.realized_cost.value_or(0.0);
        rec.x1_x = plan.x1.x();
        rec.x1_y = plan.x1.y();
        if (plan.x3) {
          rec.has_x3 = true;
          rec.x3_x = plan.x3->x();
          rec.x3_y = plan.x3->y();
        }
      } catch (const Error& e) {
        rec.success = false;
        rec.error = e.what();
      }
      result.trials[static_cast<std::size_t>(scene_id) * 3 + pk] = rec;
    }
  };

  // The observation region depends only on the TROI, which is shared by the
  // scenes of one trial, so it is computed once per trial.
  auto run_trial = [&](int trial) {
    const int base = trial * n_paths;
    Annulus ro;
    bool ro_ok = true;
    try {
      ro = compute_ro(scenes[static_cast<std::size_t>(base)].troi, ctx.arm,
                      ctx.camera, ctx.task, ctx.search, ctx.body_height);
    } catch (const Error&) {
      ro_ok = false;  // surfaced per scene by execute_trial
    }
    for (int p = 0; p < n_paths; ++p) {
      run_scene(base + p, ro_ok ? &ro : nullptr);
    }
  };

  const int n_trials = cfg.n_trials;
  if (n_threads == 1) {
    for (int t = 0; t < n_trials; ++t) run_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w) {
      pool.emplace_back([&]() {
        for (int t = next.fetch_add(1); t < n_trials; t = next.fetch_add(1)) {
          run_trial(t);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }

  // Aggregate serially in trial order.
  MetricsTable& m = result.metrics;
  m.path_lengths = cfg.path_lengths;
  for (int pk = 0; pk < 3; ++pk) {
    m.success_pct[pk].assign(n_paths, 0.0);
    m.avg_cost[pk].assign(n_paths, 0.0);
  }
  std::array<std::vector<std::vector<double>>, 3> costs;
  for (auto& c : costs) c.resize(n_paths);
  std::array<std::vector<int>, 3> successes, counts;
  for (int pk = 0; pk < 3; ++pk) {
    successes[pk].assign(n_paths, 0);
    counts[pk].assign(n_paths, 0);
  }
  for (const TrialRecord& rec : result.trials) {
    const int pk = static_cast<int>(rec.planner);
    const int p = rec.trial_id % n_paths;
    counts[pk][p] += 1;
    if (!rec.error.empty()) {
      result.errors.push_back("trial " + std::to_string(rec.trial_id) +
                              " planner " + planner_name(rec.planner) + ": " +
                              rec.error);
      continue;
    }
    successes[pk][p] += rec.success ? 1 : 0;
    costs[pk][p].push_back(rec.realized_cost);
  }
  for (int pk = 0; pk < 3; ++pk) {
    int pooled_succ = 0, pooled_n = 0;
    std::vector<double> pooled_costs;
    for (int p = 0; p < n_paths; ++p) {
      const int n = counts[pk][p];
      m.success_pct[pk][p] =
          n > 0 ? 100.0 * successes[pk][p] / n : 0.0;
      m.avg_cost[pk][p] =
          costs[pk][p].empty()
              ? 0.0
              : pairwise_sum(costs[pk][p]) / costs[pk][p].size();
      pooled_succ += successes[pk][p];
      pooled_n += n;
      pooled_costs.insert(pooled_costs.end(), costs[pk][p].begin(),
                          costs[pk][p].end());
    }
    m.pooled_success_pct[pk] =
        pooled_n > 0 ? 100.0 * pooled_succ / pooled_n : 0.0;
    m.pooled_avg_cost[pk] =
        pooled_costs.empty() ? 0.0
                             : pairwise_sum(pooled_costs) / pooled_costs.size();
  }
  m.eta_bc.resize(n_paths);
  for (int p = 0; p < n_paths; ++p) {
    // Undefined when no trial of planner c executed (all-failure runs).
    m.eta_bc[p] = m.avg_cost[2][p] > 0.0
                      ? compute_eta(m.avg_cost[1][p], m.avg_cost[2][p])
                      : std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

}  // namespace capm
