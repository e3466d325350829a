#include "capm/energy.hpp"

#include <cmath>

namespace capm {

double state_distance(const BodyPose& a, const BodyPose& b,
                      const EnergyParams& params) {
  const double dx = b.position.x() - a.position.x();
  const double dy = b.position.y() - a.position.y();
  const double sq = dx * dx + dy * dy;
  double d = params.metric == DistanceMetric::Squared ? sq : std::sqrt(sq);
  if (params.beta != 0.0) {
    const double dyaw = normalize_angle(b.yaw - a.yaw);
    d += params.beta * (1.0 - std::abs(std::cos(0.5 * dyaw)));
  }
  return d;
}

double energy_cost(const BodyPose& a, const BodyPose& b,
                   const EnergyParams& params) {
  const double d = state_distance(a, b, params);
  if (d == 0.0) return 0.0;
  return params.alpha + params.gamma * d;
}

}  // namespace capm
