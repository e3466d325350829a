#pragma once

#include <array>

#include "capm/targets.hpp"
#include "capm/types.hpp"

namespace capm {

/// Pinhole intrinsics. Pixel coordinates run over [0, width] x [0, height]
/// with u to the image right and v down.
struct CameraModel {
  double focal_u = 600.0;
  double focal_v = 600.0;
  double center_u = 320.0;
  double center_v = 240.0;
  int width = 640;
  int height = 480;
};

/// End-effector pose: camera/tool position and boresight direction (unit).
/// The camera optical axis and the tool axis coincide.
struct EePose {
  Vec3 position{0.0, 0.0, 1.0};
  Vec3 optical_axis{0.0, 0.0, -1.0};
};

/// Ground-plane-to-image homography. `matrix` maps [x, y, 1]^T on z = 0 to
/// homogeneous pixels; the w component of the product equals the metric depth
/// of the ground point along the boresight, so the matrix also encodes the
/// in-front-of-camera test.
struct Homography {
  Mat3 matrix = Mat3::Identity();
  Mat3 inverse = Mat3::Identity();
};

/// Back-projection of the four image corners onto the ground plane, ordered
/// counterclockwise in world x-y.
struct GroundFootprint {
  std::array<Vec2, 4> corners;

  /// Inclusive convex containment test.
  bool contains(const Vec2& p) const;
  double area() const;
};

inline constexpr double kBoresightZFloor = 1e-6;
inline constexpr double kHomographyDetFloor = 1e-12;
inline constexpr double kHomogeneousWFloor = 1e-12;
inline constexpr int kBoundarySamples = 256;

/// Cosine and sine of 2*pi*i/samples, table-backed for the default sample
/// count so disc-boundary loops stay trig-free.
void unit_circle(int i, int samples, double* c, double* s);

/// Camera rotation for a boresight: rows are the camera x (image right),
/// y (image down), z (boresight) axes. Image-down is the projection of world
/// -z onto the image plane; when the boresight is vertical, image-right falls
/// back to the world x axis.
Mat3 camera_rotation(const Vec3& optical_axis);

/// Throws DegenerateView if the boresight is within kBoresightZFloor of
/// horizontal, the camera is not above the ground, or the homography is
/// numerically singular.
Homography homography_from_ee(const EePose& ee, const CameraModel& cam);

/// Throws AtInfinity when the ground point maps to the line at infinity.
Vec2 project_ground_point(const Homography& h, const Vec2& ground);

/// Throws BehindCamera when the pixel ray does not meet the ground plane at
/// positive depth.
Vec2 backproject_pixel(const Homography& h, const Vec2& pixel);

/// Throws HorizonInView when any corner ray misses the ground plane.
GroundFootprint fov_footprint(const EePose& ee, const CameraModel& cam);

/// Area of the projected TROI ground disc divided by width*height. The disc
/// boundary is sampled at `samples` points and the projected polygon area is
/// taken; no clipping to the image rectangle. Throws DegenerateView if the
/// view is degenerate or part of the disc is not at positive depth.
double troi_area_ratio(const EePose& ee, const CameraModel& cam,
                       const Troi& troi, int samples = kBoundarySamples);

}  // namespace capm
