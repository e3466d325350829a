#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "capm/planner.hpp"

namespace capm {

/// Full parameterization of the three-planner comparison experiment.
struct ExperimentConfig {
  int n_trials = 1000;
  double workspace = 3.0;  // side of the TROI-generation square (m)
  double r_w_min = 0.2;
  double r_w_max = 0.3;
  std::vector<double> path_lengths{2.75, 3.25, 3.75, 4.25, 4.75};
  SigmaMode sigma_mode = SigmaMode::Squared;
  bool sigma_truncate = true;
  EnergyParams energy;
  TaskParams task;
  CameraModel camera;
  ArmModel arm;
  double body_height = 0.8;
  SearchGrid grid;
  PolarGrid planner_grid;
  std::uint64_t master_seed = 1;
  int mc_samples = 2000;
};

PlannerContext make_planner_context(const ExperimentConfig& cfg);

/// One executed (scene, planner) outcome.
struct TrialRecord {
  int trial_id = 0;       // scene index: trial * n_paths + path
  double path_length = 0.0;
  PlannerKind planner = PlannerKind::Deterministic;
  Branch branch = Branch::NoObservation;
  bool success = false;
  double expected_cost = 0.0;
  double realized_cost = 0.0;
  double troi_x = 0.0, troi_y = 0.0, r_w = 0.0;
  double mpoi_x = 0.0, mpoi_y = 0.0;
  double x1_x = 0.0, x1_y = 0.0;
  bool has_x3 = false;
  double x3_x = 0.0, x3_y = 0.0;
  std::string error;  // nonempty when the trial could not be executed
};

/// Aggregated comparison table: per (planner, path length) success and mean
/// realized cost, the pooled per-planner success over all scenes, and the
/// energy-saving coefficient per path length.
struct MetricsTable {
  std::vector<double> path_lengths;
  std::array<std::vector<double>, 3> success_pct;  // [planner][length]
  std::array<std::vector<double>, 3> avg_cost;
  std::array<double, 3> pooled_success_pct{0.0, 0.0, 0.0};
  std::array<double, 3> pooled_avg_cost{0.0, 0.0, 0.0};
  std::vector<double> eta_bc;
};

struct ExperimentResult {
  MetricsTable metrics;
  std::vector<TrialRecord> trials;
  std::vector<std::string> errors;  // per-trial failures, with trial ids
};

/// The n_trials x path_lengths scene set. TROIs are drawn per trial index
/// and shared across path lengths; the MPOI is drawn per scene from its own
/// stream, so the list is a pure function of the config.
std::vector<TrialScene> generate_trials(const ExperimentConfig& cfg);

/// Runs planners a, b, c on every scene and aggregates. Results are
/// byte-identical across runs and thread counts: trials own derived rng
/// streams, land in index order, and sums are reduced pairwise in index
/// order. n_threads <= 0 picks the hardware count.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                int n_threads = 0);

/// (avg_b - avg_c) / avg_c. Throws DivisionByZero when avg_c == 0.
double compute_eta(double avg_b, double avg_c);

/// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace capm
