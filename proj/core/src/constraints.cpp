#include "capm/constraints.hpp"

#include <algorithm>
#include <cmath>

#include "capm/errors.hpp"

namespace capm {
namespace {

struct Edge {
  double ax, ay, ex, ey, tol;
};

inline void footprint_edges(const GroundFootprint& fp, Edge* edges) {
  for (int i = 0; i < 4; ++i) {
    const Vec2& a = fp.corners[i];
    const Vec2& b = fp.corners[(i + 1) % 4];
    edges[i].ax = a.x();
    edges[i].ay = a.y();
    edges[i].ex = b.x() - a.x();
    edges[i].ey = b.y() - a.y();
    edges[i].tol =
        1e-9 * (std::abs(edges[i].ex) + std::abs(edges[i].ey) + 1.0);
  }
}

inline bool inside_edges(const Edge* edges, double x, double y) {
  for (int i = 0; i < 4; ++i) {
    const double cross = edges[i].ex * (y - edges[i].ay) -
                         edges[i].ey * (x - edges[i].ax);
    if (cross < -edges[i].tol) return false;
  }
  return true;
}

}  // namespace

int coverage_indicator(const EePose& ee, const CameraModel& cam,
                       const Troi& troi, int samples) {
  GroundFootprint fp;
  try {
    fp = fov_footprint(ee, cam);
  } catch (const HorizonInView&) {
    return 0;
  }
  Edge edges[4];
  footprint_edges(fp, edges);
  if (!inside_edges(edges, troi.center.x(), troi.center.y())) return 0;
  for (int i = 0; i < samples; ++i) {
    double c, s;
    unit_circle(i, samples, &c, &s);
    const double x = troi.center.x() + troi.radius * c;
    const double y = troi.center.y() + troi.radius * s;
    if (!inside_edges(edges, x, y)) return 0;
  }
  return 1;
}

// One pass over the disc boundary covering both the containment check and
// the projected-area accumulation; this is the hot call of the region scans.
int nsv_indicator(const EePose& ee, const CameraModel& cam, const Troi& troi,
                  const TaskParams& params, int samples) {
  GroundFootprint fp;
  Homography h;
  try {
    h = homography_from_ee(ee, cam);
    fp = fov_footprint(ee, cam);
  } catch (const DegenerateView&) {
    return 0;
  } catch (const HorizonInView&) {
    return 0;
  }
  Edge edges[4];
  footprint_edges(fp, edges);
  if (!inside_edges(edges, troi.center.x(), troi.center.y())) return 0;
  if (troi.radius <= 0.0) return 0;  // zero-area projection cannot reach delta

  const double h00 = h.matrix(0, 0), h01 = h.matrix(0, 1), h02 = h.matrix(0, 2);
  const double h10 = h.matrix(1, 0), h11 = h.matrix(1, 1), h12 = h.matrix(1, 2);
  const double h20 = h.matrix(2, 0), h21 = h.matrix(2, 1), h22 = h.matrix(2, 2);

  double twice = 0.0;
  double prev_u = 0.0, prev_v = 0.0, first_u = 0.0, first_v = 0.0;
  for (int i = 0; i < samples; ++i) {
    double c, s;
    unit_circle(i, samples, &c, &s);
    const double x = troi.center.x() + troi.radius * c;
    const double y = troi.center.y() + troi.radius * s;
    if (!inside_edges(edges, x, y)) return 0;
    const double depth = h20 * x + h21 * y + h22;
    if (depth <= kHomogeneousWFloor) return 0;
    const double u = (h00 * x + h01 * y + h02) / depth;
    const double v = (h10 * x + h11 * y + h12) / depth;
    if (i == 0) {
      first_u = u;
      first_v = v;
    } else {
      twice += prev_u * v - u * prev_v;
    }
    prev_u = u;
    prev_v = v;
  }
  twice += prev_u * first_v - first_u * prev_v;
  const double ratio =
      0.5 * std::abs(twice) / (static_cast<double>(cam.width) * cam.height);
  return ratio >= params.delta ? 1 : 0;
}

int epmc_indicator(const EePose& ee, const Mpoi& mpoi,
                   const TaskParams& params) {
  const Vec3 to_target = mpoi.point - ee.position;
  const double sq = to_target.squaredNorm();
  if (sq < params.eps_min || sq > params.eps_max) return 0;
  if (params.aim_tol < kPi) {
    const double denom = to_target.norm() * ee.optical_axis.norm();
    if (denom < 1e-12) return 0;
    const double c =
        std::clamp(to_target.dot(ee.optical_axis) / denom, -1.0, 1.0);
    if (std::acos(c) > params.aim_tol) return 0;
  }
  return 1;
}

int mtc_check(int hold_ticks, bool epmc_held, const TaskParams& params) {
  return (epmc_held && hold_ticks >= params.xi) ? 1 : 0;
}

}  // namespace capm
