#include "capm/geometry.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "capm/errors.hpp"

namespace capm {
namespace {

// Unit-circle table shared by the disc-boundary samplers. Sized for the
// default sample count; other counts fall back to on-the-fly trig.
struct CircleTable {
  std::array<double, kBoundarySamples> c, s;
  CircleTable() {
    for (int i = 0; i < kBoundarySamples; ++i) {
      const double a = 2.0 * kPi * i / kBoundarySamples;
      c[i] = std::cos(a);
      s[i] = std::sin(a);
    }
  }
};
const CircleTable& circle_table() {
  static const CircleTable table;
  return table;
}

}  // namespace

void unit_circle(int i, int samples, double* c, double* s) {
  if (samples == kBoundarySamples) {
    const CircleTable& t = circle_table();
    *c = t.c[i];
    *s = t.s[i];
  } else {
    const double a = 2.0 * kPi * i / samples;
    *c = std::cos(a);
    *s = std::sin(a);
  }
}

bool GroundFootprint::contains(const Vec2& p) const {
  // Corners are CCW; a point is inside iff it is on the left (inclusively)
  // of every edge. Tolerance is relative to the edge scale.
  for (int i = 0; i < 4; ++i) {
    const Vec2& a = corners[i];
    const Vec2& b = corners[(i + 1) % 4];
    const double ex = b.x() - a.x();
    const double ey = b.y() - a.y();
    const double cross = ex * (p.y() - a.y()) - ey * (p.x() - a.x());
    const double tol = 1e-9 * (std::abs(ex) + std::abs(ey) + 1.0);
    if (cross < -tol) return false;
  }
  return true;
}

double GroundFootprint::area() const {
  double twice = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec2& a = corners[i];
    const Vec2& b = corners[(i + 1) % 4];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(twice);
}

Mat3 camera_rotation(const Vec3& optical_axis) {
  const Vec3 z = optical_axis.normalized();
  Vec3 x_axis, y_axis;
  // Image-down follows the projection of world -z; at a vertical boresight
  // that projection vanishes and image-right falls back to world x.
  Vec3 down = Vec3(0.0, 0.0, -1.0) - (Vec3(0.0, 0.0, -1.0).dot(z)) * z;
  if (down.norm() > 1e-9) {
    y_axis = down.normalized();
    x_axis = y_axis.cross(z);
  } else {
    Vec3 wx = Vec3(1.0, 0.0, 0.0) - (Vec3(1.0, 0.0, 0.0).dot(z)) * z;
    x_axis = wx.normalized();
    y_axis = z.cross(x_axis);
  }
  Mat3 rot;
  rot.row(0) = x_axis.transpose();
  rot.row(1) = y_axis.transpose();
  rot.row(2) = z.transpose();
  return rot;
}

Homography homography_from_ee(const EePose& ee, const CameraModel& cam) {
  if (ee.position.z() <= 0.0) {
    throw DegenerateView("camera is not above the ground plane");
  }
  if (std::abs(ee.optical_axis.z()) <
      kBoresightZFloor * ee.optical_axis.norm()) {
    throw DegenerateView("boresight is horizontal");
  }
  const Mat3 rot = camera_rotation(ee.optical_axis);
  Mat3 k = Mat3::Zero();
  k(0, 0) = cam.focal_u;
  k(1, 1) = cam.focal_v;
  k(0, 2) = cam.center_u;
  k(1, 2) = cam.center_v;
  k(2, 2) = 1.0;

  // Columns: images of the ground x, y directions and of the ground origin.
  Mat3 ext;
  ext.col(0) = rot.col(0);
  ext.col(1) = rot.col(1);
  ext.col(2) = -rot * ee.position;

  Homography h;
  h.matrix = k * ext;
  const double det = h.matrix.determinant();
  if (std::abs(det) < kHomographyDetFloor) {
    throw DegenerateView("homography is singular");
  }
  h.inverse = h.matrix.inverse();
  return h;
}

Vec2 project_ground_point(const Homography& h, const Vec2& ground) {
  const Vec3 p = h.matrix * Vec3(ground.x(), ground.y(), 1.0);
  if (std::abs(p.z()) < kHomogeneousWFloor) {
    throw AtInfinity("ground point projects to infinity");
  }
  return Vec2(p.x() / p.z(), p.y() / p.z());
}

Vec2 backproject_pixel(const Homography& h, const Vec2& pixel) {
  const Vec3 g = h.inverse * Vec3(pixel.x(), pixel.y(), 1.0);
  if (std::abs(g.z()) < kHomogeneousWFloor) {
    throw BehindCamera("pixel ray is parallel to the ground plane");
  }
  const Vec2 ground(g.x() / g.z(), g.y() / g.z());
  // Depth along the boresight is the w component of the forward map.
  const double depth = h.matrix.row(2).dot(Vec3(ground.x(), ground.y(), 1.0));
  if (depth <= kHomogeneousWFloor) {
    throw BehindCamera("pixel ray meets the ground behind the camera");
  }
  return ground;
}

GroundFootprint fov_footprint(const EePose& ee, const CameraModel& cam) {
  Homography h;
  try {
    h = homography_from_ee(ee, cam);
  } catch (const DegenerateView& e) {
    throw HorizonInView(e.what());
  }
  const double w = static_cast<double>(cam.width);
  const double v = static_cast<double>(cam.height);
  const std::array<Vec2, 4> px = {Vec2(0.0, 0.0), Vec2(w, 0.0), Vec2(w, v),
                                  Vec2(0.0, v)};
  GroundFootprint fp;
  for (int i = 0; i < 4; ++i) {
    try {
      fp.corners[i] = backproject_pixel(h, px[i]);
    } catch (const BehindCamera& e) {
      throw HorizonInView(e.what());
    }
  }
  // Enforce CCW orientation in world x-y.
  double twice = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec2& a = fp.corners[i];
    const Vec2& b = fp.corners[(i + 1) % 4];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  if (twice < 0.0) {
    std::swap(fp.corners[1], fp.corners[3]);
  }
  return fp;
}

double troi_area_ratio(const EePose& ee, const CameraModel& cam,
                       const Troi& troi, int samples) {
  if (troi.radius <= 0.0) return 0.0;
  const Homography h = homography_from_ee(ee, cam);
  const double h20 = h.matrix(2, 0);
  const double h21 = h.matrix(2, 1);
  const double h22 = h.matrix(2, 2);

  // Shoelace over the projected boundary polygon, unclipped.
  double twice = 0.0;
  double prev_u = 0.0, prev_v = 0.0, first_u = 0.0, first_v = 0.0;
  for (int i = 0; i < samples; ++i) {
    double c, s;
    unit_circle(i, samples, &c, &s);
    const double x = troi.center.x() + troi.radius * c;
    const double y = troi.center.y() + troi.radius * s;
    const double depth = h20 * x + h21 * y + h22;
    if (depth <= kHomogeneousWFloor) {
      throw DegenerateView("TROI disc is not fully in front of the camera");
    }
    const double u =
        (h.matrix(0, 0) * x + h.matrix(0, 1) * y + h.matrix(0, 2)) / depth;
    const double v =
        (h.matrix(1, 0) * x + h.matrix(1, 1) * y + h.matrix(1, 2)) / depth;
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
  const double area = 0.5 * std::abs(twice);
  return area / (static_cast<double>(cam.width) * cam.height);
}

}  // namespace capm
