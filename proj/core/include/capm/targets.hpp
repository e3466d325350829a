#pragma once

#include "capm/types.hpp"

namespace capm {

/// Target region of interest from the low-resolution prescan: a ground disc
/// of radius `radius` centered at `center` (center.z == 0).
struct Troi {
  Vec3 center{0.0, 0.0, 0.0};
  double radius = 0.25;

  Vec2 center_xy() const { return center.head<2>(); }
  bool contains_xy(const Vec2& p) const {
    return (p - center_xy()).norm() <= radius;
  }
};

/// Manipulation point of interest: the true action point on the ground plane,
/// revealed only by a close-up observation.
struct Mpoi {
  Vec3 point{0.0, 0.0, 0.0};

  Vec2 point_xy() const { return point.head<2>(); }
};

}  // namespace capm
