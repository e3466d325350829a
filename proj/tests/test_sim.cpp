#include <doctest.h>

#include <cmath>
#include <sstream>

#include "capm/csv.hpp"
#include "capm/errors.hpp"
#include "capm/sim.hpp"

using namespace capm;

namespace {

ExperimentConfig small_config(int n_trials = 60) {
  ExperimentConfig cfg;
  cfg.n_trials = n_trials;
  cfg.mc_samples = 500;
  cfg.master_seed = 424242;
  return cfg;
}

std::string trials_bytes(const ExperimentResult& r) {
  std::ostringstream os;
  write_trials_csv(os, r.trials);
  return os.str();
}

}  // namespace

TEST_CASE("trial generation produces n_trials x path_lengths scenes") {
  ExperimentConfig cfg = small_config(40);
  const auto scenes = generate_trials(cfg);
  CHECK(scenes.size() == 40u * 5u);
  for (const TrialScene& s : scenes) {
    CHECK(std::abs(s.troi.center.x()) <= 1.5);
    CHECK(std::abs(s.troi.center.y()) <= 1.5);
    CHECK(s.troi.center.z() == 0.0);
    CHECK(s.troi.radius >= 0.2);
    CHECK(s.troi.radius <= 0.3);
    CHECK(s.start.position.x() == -s.end.position.x());
    CHECK(s.start.position.y() == 0.0);
    CHECK(s.end.position.y() == 0.0);
    // Truncated sampling is the default, so the MPOI stays in the TROI.
    CHECK(s.troi.contains_xy(s.mpoi.point_xy()));
  }
  // The five scenes of one trial share the TROI.
  for (int t = 0; t < 40; ++t) {
    for (int p = 1; p < 5; ++p) {
      CHECK((scenes[t * 5 + p].troi.center - scenes[t * 5].troi.center)
                .norm() == 0.0);
      CHECK(scenes[t * 5 + p].troi.radius == scenes[t * 5].troi.radius);
    }
  }
}

TEST_CASE("trial generation is a pure function of the config") {
  ExperimentConfig cfg = small_config(30);
  const auto a = generate_trials(cfg);
  const auto b = generate_trials(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i].troi.center - b[i].troi.center).norm() == 0.0);
    CHECK((a[i].mpoi.point - b[i].mpoi.point).norm() == 0.0);
  }
  cfg.master_seed += 1;
  const auto c = generate_trials(cfg);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i].troi.center - c[i].troi.center).norm() > 0.0) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("untruncated sampling leaves some MPOIs outside the TROI") {
  ExperimentConfig cfg = small_config(40);
  cfg.sigma_truncate = false;
  const auto scenes = generate_trials(cfg);
  int outside = 0;
  for (const TrialScene& s : scenes) {
    if (!s.troi.contains_xy(s.mpoi.point_xy())) ++outside;
  }
  CHECK(outside > 0);
}

TEST_CASE("experiment results are byte-identical across thread counts") {
  ExperimentConfig cfg = small_config(24);
  const ExperimentResult r1 = run_experiment(cfg, 1);
  const ExperimentResult r2 = run_experiment(cfg, 2);
  CHECK(trials_bytes(r1) == trials_bytes(r2));
  std::ostringstream m1, m2;
  write_metrics_csv(m1, r1.metrics);
  write_metrics_csv(m2, r2.metrics);
  CHECK(m1.str() == m2.str());
}

TEST_CASE("the planner comparison orders as reported") {
  ExperimentConfig cfg = small_config(150);
  const ExperimentResult r = run_experiment(cfg, 2);
  CHECK(r.errors.empty());
  const MetricsTable& m = r.metrics;
  CHECK(m.pooled_success_pct[1] == 100.0);
  CHECK(m.pooled_success_pct[2] == 100.0);
  CHECK(m.pooled_success_pct[0] < 100.0);
  for (std::size_t p = 0; p < m.path_lengths.size(); ++p) {
    CHECK(m.avg_cost[1][p] > m.avg_cost[2][p]);   // b dearer than c
    CHECK(m.avg_cost[2][p] > m.avg_cost[0][p]);   // c dearer than a
    CHECK(m.eta_bc[p] > 0.0);
    if (p > 0) {
      // Costs rise with the path length for every planner.
      CHECK(m.avg_cost[0][p] > m.avg_cost[0][p - 1]);
      CHECK(m.avg_cost[1][p] > m.avg_cost[1][p - 1]);
      CHECK(m.avg_cost[2][p] > m.avg_cost[2][p - 1]);
    }
  }
  CHECK(m.eta_bc.front() >= m.eta_bc.back());
}

TEST_CASE("energy saving coefficient evaluates the published quotients") {
  CHECK(compute_eta(4.35, 3.82) == doctest::Approx(0.138743).epsilon(1e-5));
  CHECK(compute_eta(7.5, 7.5) == 0.0);
  CHECK(compute_eta(5.48, 5.09) == doctest::Approx(0.076621).epsilon(1e-5));
  CHECK_THROWS_AS(compute_eta(1.0, 0.0), DivisionByZero);
}

TEST_CASE("pairwise summation matches plain summation") {
  RngStream rng(55, 0);
  std::vector<double> values;
  double plain = 0.0;
  for (int i = 0; i < 1234; ++i) {
    values.push_back(rng.uniform() * 10.0 - 5.0);
    plain += values.back();
  }
  CHECK(pairwise_sum(values) == doctest::Approx(plain).epsilon(1e-12));
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
}

TEST_CASE("infeasible configurations are surfaced, not dropped") {
  ExperimentConfig cfg = small_config(4);
  // A distance band the arm can never reach from any base placement.
  cfg.task.eps_min = 9.0;
  cfg.task.eps_max = 9.1;
  const ExperimentResult r = run_experiment(cfg, 1);
  CHECK(r.errors.size() == r.trials.size());
  for (const TrialRecord& rec : r.trials) {
    CHECK(!rec.error.empty());
    CHECK(!rec.success);
  }
  for (int pk = 0; pk < 3; ++pk) {
    CHECK(r.metrics.pooled_success_pct[pk] == 0.0);
  }
}
