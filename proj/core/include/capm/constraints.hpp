#pragma once

#include "capm/geometry.hpp"
#include "capm/targets.hpp"

namespace capm {

/// Task thresholds. eps_min/eps_max bound the squared end-effector-to-MPOI
/// distance (m^2) exactly as the manipulation condition is written; xi is the
/// hold duration in ticks. aim_tol is the allowed angle between the tool axis
/// and the MPOI direction; the default of pi disables the aiming term so the
/// condition reduces to the distance band.
struct TaskParams {
  double delta = 0.05;
  double eps_min = 0.05;
  double eps_max = 0.10;
  int xi = 3;
  double aim_tol = kPi;
};

/// 1 iff the whole TROI ground disc lies inside the camera footprint.
/// Degenerate views yield 0, never an error.
int coverage_indicator(const EePose& ee, const CameraModel& cam,
                       const Troi& troi, int samples = kBoundarySamples);

/// Next sufficient view: coverage and projected-area ratio >= delta.
int nsv_indicator(const EePose& ee, const CameraModel& cam, const Troi& troi,
                  const TaskParams& params, int samples = kBoundarySamples);

/// End-effector pose condition for manipulation: squared distance to the
/// MPOI within [eps_min, eps_max] (inclusive) and the tool axis within
/// aim_tol of the MPOI direction.
int epmc_indicator(const EePose& ee, const Mpoi& mpoi,
                   const TaskParams& params);

/// Manipulation temporal condition: the pose satisfied the manipulation
/// condition and was held for at least xi ticks.
int mtc_check(int hold_ticks, bool epmc_held, const TaskParams& params);

}  // namespace capm
