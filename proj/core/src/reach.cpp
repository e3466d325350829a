#include "capm/reach.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "capm/errors.hpp"

namespace capm {
namespace {

// Body placed on the +x axis from the scan center at distance rho, facing
// the center. Membership depends only on rho under the shell model.
BodyPose body_at_radius(const Vec2& center, double rho, double body_height) {
  BodyPose body;
  body.position = center + Vec2(rho, 0.0);
  body.yaw = rho > 0.0 ? kPi : 0.0;
  body.body_height = body_height;
  return body;
}

using FeasibleFn = bool (*)(double, const void*, int);

struct RoCtx {
  const Troi* troi;
  const ArmModel* arm;
  const CameraModel* cam;
  const TaskParams* params;
  const SearchGrid* grid;
  double body_height;
};

struct RmCtx {
  Vec2 target;
  const ArmModel* arm;
  const TaskParams* params;
  const SearchGrid* grid;
  double body_height;
};

bool ro_eval(double rho, const void* opaque, int level) {
  const RoCtx& c = *static_cast<const RoCtx*>(opaque);
  return ro_feasible_at_radius(rho, *c.troi, *c.arm, *c.cam, *c.params,
                               *c.grid, c.body_height, level);
}

bool rm_eval(double rho, const void* opaque, int level) {
  const RmCtx& c = *static_cast<const RmCtx*>(opaque);
  return rm_feasible_at_radius(rho, c.target, *c.arm, *c.params, *c.grid,
                               c.body_height, level);
}

// Pushes a verified-feasible boundary radius outward. Each level works with
// a denser candidate grid, which can reveal feasibility well beyond the
// coarser level's detection, so the bound first crawls outward at the
// previous level's step (bounded by 4x refine_factor probes) and the last
// bracket is then subdivided. Every returned radius tested feasible.
double refine_boundary(double infeasible_end, double feasible_end,
                       FeasibleFn fn, const void* ctx, const SearchGrid& grid,
                       double rho_lo, double rho_hi) {
  double best = feasible_end;
  double step = std::abs(feasible_end - infeasible_end);
  const double out = (infeasible_end > feasible_end) ? 1.0 : -1.0;
  for (int level = 1; level <= grid.refine_levels; ++level) {
    for (int crawl = 0; crawl < 4 * grid.refine_factor; ++crawl) {
      const double cand = std::clamp(best + out * step, rho_lo, rho_hi);
      if (cand == best || !fn(cand, ctx, level)) break;
      best = cand;
      if (cand == rho_lo || cand == rho_hi) return best;
    }
    const double sub = step / grid.refine_factor;
    for (int k = 1; k < grid.refine_factor; ++k) {
      const double cand = std::clamp(best + out * sub, rho_lo, rho_hi);
      if (cand == best || !fn(cand, ctx, level)) break;
      best = cand;
      if (cand == rho_lo || cand == rho_hi) return best;
    }
    step = sub;
  }
  // Bisect the final bracket so the reported bound sits well inside one
  // finest-level step of the detection limit.
  double outside = std::clamp(best + out * step, rho_lo, rho_hi);
  for (int b = 0; b < 3 && outside != best; ++b) {
    const double mid = 0.5 * (best + outside);
    if (fn(mid, ctx, grid.refine_levels)) {
      best = mid;
    } else {
      outside = mid;
    }
  }
  return best;
}

Annulus scan_region(const Vec2& center, FeasibleFn fn, const void* ctx,
                    const SearchGrid& grid, const ArmModel& arm,
                    const char* label) {
  const double rho_max = grid.rho_max(arm);
  const int n = grid.rho_steps;
  std::vector<char> mask(n + 1, 0);
  for (int i = 0; i <= n; ++i) {
    mask[i] = fn(rho_max * i / n, ctx, 0) ? 1 : 0;
  }

  // The feasible set must be a single run of grid points.
  int runs = 0;
  int run_lo = -1, run_hi = -1;
  for (int i = 0; i <= n; ++i) {
    if (mask[i] && (i == 0 || !mask[i - 1])) {
      ++runs;
      if (runs == 1) run_lo = i;
    }
    if (mask[i]) run_hi = std::max(run_hi, i);
  }
  if (runs > 1) {
    throw NonIntervalFeasibility(std::string(label) +
                                 ": feasible radii form multiple intervals "
                                 "at scan resolution");
  }

  Annulus out;
  out.center = center;
  if (runs == 0) {
    out.empty = true;
    return out;
  }
  const double step = rho_max / n;
  double r_inner = step * run_lo;
  double r_outer = step * run_hi;
  if (run_lo > 0) {
    r_inner = refine_boundary(step * (run_lo - 1), r_inner, fn, ctx, grid,
                              0.0, rho_max);
  }
  if (run_hi < n) {
    r_outer = refine_boundary(step * (run_hi + 1), r_outer, fn, ctx, grid,
                              0.0, rho_max);
  }
  out.r_inner = r_inner;
  out.r_outer = r_outer;
  out.empty = false;
  return out;
}

}  // namespace

Vec3 shoulder_position(const BodyPose& body, const ArmModel& arm) {
  const double c = std::cos(body.yaw);
  const double s = std::sin(body.yaw);
  const Vec3& o = arm.shoulder_offset;
  return Vec3(body.position.x() + c * o.x() - s * o.y(),
              body.position.y() + s * o.x() + c * o.y(),
              body.body_height + o.z());
}

bool ee_reachable(const BodyPose& body, const Vec3& ee_position,
                  const ArmModel& arm) {
  const double d = (ee_position - shoulder_position(body, arm)).norm();
  return d >= arm.reach_min && d <= arm.reach_max;
}

bool ro_feasible_at_radius(double rho, const Troi& troi, const ArmModel& arm,
                           const CameraModel& cam, const TaskParams& params,
                           const SearchGrid& grid, double body_height,
                           int level) {
  const Vec2 center = troi.center_xy();
  const BodyPose body = body_at_radius(center, rho, body_height);
  const Vec3 target3 = troi.center;
  return visit_ee_candidates(
      body, center, arm, grid, level, [&](const Vec3& pos) {
        const Vec3 axis = target3 - pos;
        const double norm = axis.norm();
        if (norm < 1e-9) return false;
        EePose ee{pos, axis / norm};
        return nsv_indicator(ee, cam, troi, params) == 1;
      });
}

bool rm_feasible_at_radius(double rho, const Vec2& target, const ArmModel& arm,
                           const TaskParams& params, const SearchGrid& grid,
                           double body_height, int level) {
  const BodyPose body = body_at_radius(target, rho, body_height);
  const Vec3 target3(target.x(), target.y(), 0.0);
  return visit_ee_candidates(
      body, target, arm, grid, level, [&](const Vec3& pos) {
        const Vec3 axis = target3 - pos;
        const double norm = axis.norm();
        if (norm < 1e-9) return false;
        EePose ee{pos, axis / norm};
        Mpoi mpoi{target3};
        return epmc_indicator(ee, mpoi, params) == 1;
      });
}

Annulus compute_ro(const Troi& troi, const ArmModel& arm,
                   const CameraModel& cam, const TaskParams& params,
                   const SearchGrid& grid, double body_height) {
  RoCtx ctx{&troi, &arm, &cam, &params, &grid, body_height};
  return scan_region(troi.center_xy(), &ro_eval, &ctx, grid, arm, "R_o");
}

Annulus compute_rm(const Vec2& target, const ArmModel& arm,
                   const TaskParams& params, const SearchGrid& grid,
                   double body_height) {
  RmCtx ctx{target, &arm, &params, &grid, body_height};
  return scan_region(target, &rm_eval, &ctx, grid, arm, "R_m");
}

double disc_intersection_area(double r1, double r2, double d) {
  if (r1 <= 0.0 || r2 <= 0.0) return 0.0;
  if (d >= r1 + r2) return 0.0;
  const double rmin = std::min(r1, r2);
  if (d <= std::abs(r1 - r2)) return kPi * rmin * rmin;
  const double a1 = std::acos(
      std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
  const double a2 = std::acos(
      std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) *
                   (d + r1 + r2);
  return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * std::sqrt(std::max(0.0, k));
}

double annulus_intersection_area(const Annulus& a, const Annulus& b) {
  if (a.empty || b.empty) return 0.0;
  const double d = (a.center - b.center).norm();
  return disc_intersection_area(a.r_outer, b.r_outer, d) -
         disc_intersection_area(a.r_outer, b.r_inner, d) -
         disc_intersection_area(a.r_inner, b.r_outer, d) +
         disc_intersection_area(a.r_inner, b.r_inner, d);
}

ProblemType classify_problem_type(const Annulus& ro, const Annulus& rm,
                                  bool mpoi_in_troi) {
  if (ro.empty || rm.empty) {
    throw Unclassifiable("a region is empty");
  }
  const double d = (ro.center - rm.center).norm();
  const double a_ro = ro.area();
  const double a_rm = rm.area();
  const double inter = annulus_intersection_area(ro, rm);
  const bool disjoint = inter <= 1e-12 * std::max({a_ro, a_rm, 1.0});

  if (disjoint) {
    if (!mpoi_in_troi) return ProblemType::TypeIV;
    if (d + rm.r_outer < ro.r_inner) return ProblemType::TypeI;
    if (d + ro.r_outer < rm.r_inner) return ProblemType::TypeIII;
    throw Unclassifiable(
        "regions are disjoint but neither encloses the other");
  }
  const bool ro_subset = inter >= a_ro * (1.0 - 1e-9);
  const bool rm_subset = inter >= a_rm * (1.0 - 1e-9);
  if (!ro_subset && !rm_subset && inter >= 0.01 * std::min(a_ro, a_rm)) {
    return ProblemType::TypeII;
  }
  throw Unclassifiable(
      ro_subset || rm_subset
          ? "one region encloses the other"
          : "overlap below the significance threshold");
}

const char* problem_type_name(ProblemType t) {
  switch (t) {
    case ProblemType::TypeI: return "TypeI";
    case ProblemType::TypeII: return "TypeII";
    case ProblemType::TypeIII: return "TypeIII";
    case ProblemType::TypeIV: return "TypeIV";
  }
  return "?";
}

}  // namespace capm
