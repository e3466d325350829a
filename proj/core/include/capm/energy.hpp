#pragma once

#include "capm/reach.hpp"

namespace capm {

/// Positional term of the state distance. Squared applies the metric exactly
/// as written (||dX||^2); Linear reads the same notation as a plain Euclidean
/// distance. The linear reading is the shipped default because it is the one
/// under which extra body stops are never free, matching the reported
/// three-planner ordering (see README).
enum class DistanceMetric { Linear, Squared };

struct EnergyParams {
  double alpha = 1.0;  // fixed start cost charged once per actual move
  double gamma = 2.0;  // variable-cost coefficient
  double beta = 0.0;   // orientation weight
  DistanceMetric metric = DistanceMetric::Linear;
};

/// Distance between two body states: positional term per `metric` plus
/// beta * (1 - |cos(dyaw / 2)|), the planar-yaw quaternion term.
double state_distance(const BodyPose& a, const BodyPose& b,
                      const EnergyParams& params);

/// 0 when the states coincide; otherwise alpha + gamma * state_distance.
double energy_cost(const BodyPose& a, const BodyPose& b,
                   const EnergyParams& params);

}  // namespace capm
