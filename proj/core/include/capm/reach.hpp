#pragma once

#include <cmath>

#include "capm/constraints.hpp"

namespace capm {

/// Planar base pose with fixed operating height.
struct BodyPose {
  Vec2 position{0.0, 0.0};
  double yaw = 0.0;
  double body_height = 0.8;
};

/// Spherical reach-shell arm abstraction: an end-effector position is
/// reachable iff its distance from the shoulder point lies in
/// [reach_min, reach_max]; any orientation inside the shell is assumed
/// achievable.
struct ArmModel {
  Vec3 shoulder_offset{0.0, 0.0, 0.0};
  double reach_min = 0.15;
  double reach_max = 0.74;
};

/// Feasible base-placement ring. r_inner may be zero (a disc).
struct Annulus {
  Vec2 center{0.0, 0.0};
  double r_inner = 0.0;
  double r_outer = 0.0;
  bool empty = true;

  bool contains(const Vec2& p) const {
    if (empty) return false;
    const double d = (p - center).norm();
    return d >= r_inner && d <= r_outer;
  }
  double area() const {
    return empty ? 0.0 : kPi * (r_outer * r_outer - r_inner * r_inner);
  }
  Annulus translated(const Vec2& new_center) const {
    Annulus a = *this;
    a.center = new_center;
    return a;
  }
};

enum class ProblemType { TypeI, TypeII, TypeIII, TypeIV };

/// Discretization of the region scans: a 1-D radial sweep with an in-plane
/// end-effector candidate grid per radius. Interval endpoints are refined
/// refine_levels times; each level divides the radial step by refine_factor
/// and densifies the candidate grid by inner_refine_factor.
struct SearchGrid {
  int rho_steps = 256;
  int standoff_steps = 32;
  int height_steps = 24;
  int refine_levels = 2;
  int refine_factor = 4;
  int inner_refine_factor = 4;
  double rho_margin = 1.0;  // sweep covers [0, reach_max + rho_margin]

  double rho_max(const ArmModel& arm) const { return arm.reach_max + rho_margin; }
  double base_step(const ArmModel& arm) const { return rho_max(arm) / rho_steps; }
  double refined_step(const ArmModel& arm) const {
    double s = base_step(arm);
    for (int l = 0; l < refine_levels; ++l) s /= refine_factor;
    return s;
  }
};

Vec3 shoulder_position(const BodyPose& body, const ArmModel& arm);

/// Shell test: reach_min <= |ee - shoulder| <= reach_max.
bool ee_reachable(const BodyPose& body, const Vec3& ee_position,
                  const ArmModel& arm);

/// Enumerates the in-plane end-effector candidates for a body working the
/// ground point `target`: planar offsets from the target along the
/// target-to-body axis spanning the reachable band, heights over
/// (0, body_height + reach_max]. fn(position) is called for every reachable
/// candidate until it returns true; returns whether any call did.
template <typename Fn>
bool visit_ee_candidates(const BodyPose& body, const Vec2& target,
                         const ArmModel& arm, const SearchGrid& grid,
                         int level, Fn&& fn) {
  const Vec2 offset = body.position - target;
  const double rho = offset.norm();
  const Vec2 dir = rho > 1e-12 ? Vec2(offset / rho) : Vec2(1.0, 0.0);
  const Vec3 shoulder = shoulder_position(body, arm);

  int n_u = grid.standoff_steps;
  int n_z = grid.height_steps;
  for (int l = 0; l < level; ++l) {
    n_u *= grid.inner_refine_factor;
    n_z *= grid.inner_refine_factor;
  }
  const double u_lo = rho - arm.reach_max;
  const double u_hi = rho + arm.reach_max;
  const double z_hi = body.body_height + arm.reach_max;
  const double min_sq = arm.reach_min * arm.reach_min;
  const double max_sq = arm.reach_max * arm.reach_max;

  for (int i = 0; i < n_u; ++i) {
    const double u = n_u > 1 ? u_lo + (u_hi - u_lo) * i / (n_u - 1) : rho;
    const double ex = target.x() + u * dir.x();
    const double ey = target.y() + u * dir.y();
    for (int j = 0; j < n_z; ++j) {
      const double z = z_hi * (j + 1) / n_z;
      const double dx = ex - shoulder.x();
      const double dy = ey - shoulder.y();
      const double dz = z - shoulder.z();
      const double sq = dx * dx + dy * dy + dz * dz;
      if (sq < min_sq || sq > max_sq) continue;
      if (fn(Vec3(ex, ey, z))) return true;
    }
  }
  return false;
}

/// Radially parameterized feasibility predicates behind the region scans;
/// exposed so tests and the trial executor can query them directly.
bool ro_feasible_at_radius(double rho, const Troi& troi, const ArmModel& arm,
                           const CameraModel& cam, const TaskParams& params,
                           const SearchGrid& grid, double body_height,
                           int level = 0);
bool rm_feasible_at_radius(double rho, const Vec2& target, const ArmModel& arm,
                           const TaskParams& params, const SearchGrid& grid,
                           double body_height, int level = 0);

/// Observation region: base placements admitting a reachable end-effector
/// pose with a sufficient view of the TROI. Centered at the TROI center.
/// Throws NonIntervalFeasibility when the scan finds a fragmented radial set.
Annulus compute_ro(const Troi& troi, const ArmModel& arm,
                   const CameraModel& cam, const TaskParams& params,
                   const SearchGrid& grid, double body_height = 0.8);

/// Manipulation region: base placements admitting a reachable end-effector
/// pose within the manipulation distance band of the target ground point.
Annulus compute_rm(const Vec2& target, const ArmModel& arm,
                   const TaskParams& params, const SearchGrid& grid,
                   double body_height = 0.8);

/// Area of the lens between two circles at center distance d.
double disc_intersection_area(double r1, double r2, double d);
double annulus_intersection_area(const Annulus& a, const Annulus& b);

/// Four-way classification from the region relationship; throws
/// Unclassifiable when no definition matches.
ProblemType classify_problem_type(const Annulus& ro, const Annulus& rm,
                                  bool mpoi_in_troi);

const char* problem_type_name(ProblemType t);

}  // namespace capm
