#include <doctest.h>

#include <cmath>

#include "capm/errors.hpp"
#include "capm/reach.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace capm;
using namespace capm::test;

namespace {
const CameraModel kCam;
constexpr double kBodyHeight = 0.8;

Troi centered_troi(double radius) {
  Troi t;
  t.center = Vec3(0.0, 0.0, 0.0);
  t.radius = radius;
  return t;
}

BodyPose body_at(const Vec2& p, double yaw = 0.0) {
  BodyPose b;
  b.position = p;
  b.yaw = yaw;
  b.body_height = kBodyHeight;
  return b;
}

// Existence of a feasible observation pose for an arbitrary body placement,
// through the same candidate machinery the scan uses.
bool nsv_feasible_at_body(const BodyPose& body, const Troi& troi,
                          const ArmModel& arm, const TaskParams& task,
                          const SearchGrid& grid, int max_level) {
  for (int level = 0; level <= max_level; ++level) {
    const bool hit = visit_ee_candidates(
        body, troi.center_xy(), arm, grid, level, [&](const Vec3& pos) {
          const Vec3 axis = troi.center - pos;
          if (axis.norm() < 1e-9) return false;
          EePose ee{pos, axis.normalized()};
          return nsv_indicator(ee, kCam, troi, task) == 1;
        });
    if (hit) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("reach shell accepts and rejects by distance") {
  ArmModel arm;  // [0.15, 0.74] about the shoulder
  const BodyPose body = body_at(Vec2(0.0, 0.0));
  CHECK(ee_reachable(body, Vec3(0.0, 0.0, 0.2), arm));   // distance 0.6
  CHECK(!ee_reachable(body, Vec3(0.0, 0.0, 0.8), arm));  // distance 0
  CHECK(!ee_reachable(body, Vec3(1.0, 0.0, 0.8), arm));  // distance 1.0
}

TEST_CASE("shoulder offset rotates with yaw") {
  ArmModel arm;
  arm.shoulder_offset = Vec3(0.2, 0.0, 0.1);
  BodyPose body = body_at(Vec2(1.0, 0.0), kPi / 2.0);
  const Vec3 s = shoulder_position(body, arm);
  CHECK(s.x() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.y() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(s.z() == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("manipulation region matches the analytic shell bounds") {
  ArmModel arm;
  TaskParams task;
  SearchGrid grid;
  const Annulus rm = compute_rm(Vec2(0.0, 0.0), arm, task, grid, kBodyHeight);
  const RadialBounds truth =
      rm_analytic_bounds(arm, task, kBodyHeight, grid.rho_max(arm));
  REQUIRE(!rm.empty);
  REQUIRE(!truth.empty);
  // The scan reports verified-feasible bounds, so it may only fall short.
  CHECK(rm.r_outer <= truth.r_outer + 1e-12);
  CHECK(rm.r_inner >= truth.r_inner - 1e-12);
  CHECK(std::abs(rm.r_outer - truth.r_outer) < 2.0 * grid.refined_step(arm));
  CHECK(std::abs(rm.r_inner - truth.r_inner) < 2.0 * grid.refined_step(arm));
}

TEST_CASE("manipulation region matches the pose sampler within a grid step") {
  ArmModel arm;
  TaskParams task;
  SearchGrid grid;
  const Annulus rm = compute_rm(Vec2(0.4, -0.3), arm, task, grid, kBodyHeight);
  RngStream rng(2024, 11);
  const RadialBounds sampled = rm_sampled_bounds(arm, task, kBodyHeight,
                                                 grid.rho_max(arm), 10000, rng);
  REQUIRE(!rm.empty);
  REQUIRE(!sampled.empty);
  CHECK(std::abs(rm.r_outer - sampled.r_outer) < grid.base_step(arm));
  CHECK(std::abs(rm.r_inner - sampled.r_inner) < grid.base_step(arm));
}

TEST_CASE("manipulation region with an out-of-reach band is empty") {
  ArmModel arm;
  TaskParams task;
  // Band entirely inside the dead zone below the shoulder hover height.
  task.eps_min = 0.0001;
  task.eps_max = 0.0002;
  SearchGrid grid;
  const Annulus rm = compute_rm(Vec2(0.0, 0.0), arm, task, grid, kBodyHeight);
  CHECK(rm.empty);
}

TEST_CASE("widening the distance band never shrinks the region") {
  ArmModel arm;
  SearchGrid grid;
  double prev_inner = 1e9, prev_outer = -1e9;
  bool prev_nonempty = false;
  for (double widen = 0.0; widen < 0.5; widen += 0.1) {
    TaskParams task;
    task.eps_min = std::max(0.0, 0.05 - 0.1 * widen);
    task.eps_max = 0.10 + widen;
    const Annulus rm =
        compute_rm(Vec2(0.0, 0.0), arm, task, grid, kBodyHeight);
    if (rm.empty) continue;
    if (prev_nonempty) {
      CHECK(rm.r_outer >= prev_outer - grid.refined_step(arm));
      CHECK(rm.r_inner <= prev_inner + grid.refined_step(arm));
    }
    prev_nonempty = true;
    prev_inner = rm.r_inner;
    prev_outer = rm.r_outer;
  }
  CHECK(prev_nonempty);
}

TEST_CASE("a slack distance band frees the region to the scan edge") {
  ArmModel arm;
  TaskParams task;
  task.eps_min = 0.0;
  task.eps_max = 4.0;  // far beyond the shell: the band no longer binds
  SearchGrid grid;
  const Annulus rm = compute_rm(Vec2(0.0, 0.0), arm, task, grid, kBodyHeight);
  REQUIRE(!rm.empty);
  CHECK(rm.r_inner == doctest::Approx(0.0));
  CHECK(rm.r_outer == doctest::Approx(grid.rho_max(arm)));
}

TEST_CASE("observation region covers the scan range under defaults") {
  ArmModel arm;
  TaskParams task;
  SearchGrid grid;
  const Annulus ro =
      compute_ro(centered_troi(0.25), arm, kCam, task, grid, kBodyHeight);
  REQUIRE(!ro.empty);
  CHECK(ro.r_inner == doctest::Approx(0.0));
  CHECK(ro.r_outer == doctest::Approx(grid.rho_max(arm)));
}

TEST_CASE("observation region matches the pose sampler within a grid step") {
  ArmModel arm;
  TaskParams task;
  task.delta = 0.35;  // strong resolution demand pulls the boundary inside
  SearchGrid grid;
  const Troi troi = centered_troi(0.25);
  const Annulus ro = compute_ro(troi, arm, kCam, task, grid, kBodyHeight);
  REQUIRE(!ro.empty);
  CHECK(ro.r_outer < grid.rho_max(arm));

  RngStream rng(77, 1);
  const RadialBounds sampled =
      ro_sampled_bounds(troi, arm, kCam, task, kBodyHeight, grid.rho_max(arm),
                        10000, rng, 2);
  REQUIRE(!sampled.empty);
  CHECK(std::abs(ro.r_outer - sampled.r_outer) < grid.base_step(arm));
  CHECK(std::abs(ro.r_inner - sampled.r_inner) < grid.base_step(arm));
}

TEST_CASE("demanding nearly the whole image leaves no feasible base") {
  ArmModel arm;
  arm.reach_max = 0.3;
  TaskParams task;
  task.delta = 0.95;
  SearchGrid grid;
  const Annulus ro =
      compute_ro(centered_troi(0.25), arm, kCam, task, grid, kBodyHeight);
  CHECK(ro.empty);
}

TEST_CASE("raising delta never grows the observation region") {
  ArmModel arm;
  TaskParams task;
  SearchGrid grid;
  grid.refine_levels = 1;  // monotonicity needs no boundary sharpening
  const Troi troi = centered_troi(0.25);
  double prev_outer = 1e9;
  int swept = 0;
  for (double delta = 0.10; delta < 0.45; delta += 0.04) {
    task.delta = delta;
    Annulus ro;
    try {
      ro = compute_ro(troi, arm, kCam, task, grid, kBodyHeight);
    } catch (const NonIntervalFeasibility&) {
      break;  // the feasible set fragments when the region is nearly gone
    }
    if (ro.empty) break;
    CHECK(ro.r_outer <= prev_outer + grid.base_step(arm) / grid.refine_factor);
    prev_outer = ro.r_outer;
    ++swept;
  }
  CHECK(swept >= 4);
}

TEST_CASE("a fragmented radial set is reported, not hulled") {
  // Push the resolution demand until the scan sees isolated feasible radii;
  // the scan must surface that rather than returning a hull.
  ArmModel arm;
  TaskParams task;
  SearchGrid grid;
  grid.refine_levels = 0;
  const Troi troi = centered_troi(0.25);
  bool reported = false;
  for (double delta = 0.40; delta < 0.60; delta += 0.02) {
    task.delta = delta;
    try {
      const Annulus ro = compute_ro(troi, arm, kCam, task, grid, kBodyHeight);
      if (ro.empty) break;
    } catch (const NonIntervalFeasibility&) {
      reported = true;
      break;
    }
  }
  CHECK(reported);
}

TEST_CASE("membership soundness of the returned annuli") {
  ArmModel arm;
  TaskParams task;
  task.delta = 0.35;
  SearchGrid grid;
  const Troi troi = centered_troi(0.25);
  const Annulus ro = compute_ro(troi, arm, kCam, task, grid, kBodyHeight);
  REQUIRE(!ro.empty);
  RngStream rng(17, 3);
  const double step = grid.base_step(arm);
  int inside_checked = 0, outside_checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = 2.0 * kPi * rng.uniform();
    const Vec2 dir(std::cos(a), std::sin(a));
    if (i % 2 == 0) {
      const double r =
          ro.r_inner + (ro.r_outer - ro.r_inner) * rng.uniform();
      const BodyPose body = body_at(troi.center_xy() + r * dir);
      CHECK(nsv_feasible_at_body(body, troi, arm, task, grid,
                                 grid.refine_levels));
      ++inside_checked;
    } else {
      const double r = ro.r_outer + step + 2.0 * rng.uniform();
      const BodyPose body = body_at(troi.center_xy() + r * dir);
      // The base grid must reject every outside pose; the costly refined
      // grids are spot-checked on a subsample.
      const int deep = outside_checked < 10 ? grid.refine_levels : 0;
      CHECK(!nsv_feasible_at_body(body, troi, arm, task, grid, deep));
      ++outside_checked;
    }
  }
  CHECK(inside_checked > 400);
  CHECK(outside_checked > 400);
}

TEST_CASE("feasibility depends only on the distance to the center") {
  ArmModel arm;
  TaskParams task;
  task.delta = 0.3;
  SearchGrid grid;
  const Troi troi = centered_troi(0.22);
  for (double rho : {0.2, 0.6, 1.0, 1.4}) {
    const bool reference = nsv_feasible_at_body(
        body_at(troi.center_xy() + Vec2(rho, 0.0)), troi, arm, task, grid, 0);
    for (int k = 1; k < 8; ++k) {
      const double a = 2.0 * kPi * k / 8.0;
      const BodyPose body = body_at(
          troi.center_xy() + rho * Vec2(std::cos(a), std::sin(a)), a + kPi);
      CHECK(nsv_feasible_at_body(body, troi, arm, task, grid, 0) == reference);
    }
  }
}

TEST_CASE("disc intersection area agrees with grid sampling") {
  RngStream rng(41, 9);
  for (int trial = 0; trial < 20; ++trial) {
    const double r1 = 0.3 + rng.uniform();
    const double r2 = 0.3 + rng.uniform();
    const double d = 2.5 * rng.uniform();
    const double analytic = disc_intersection_area(r1, r2, d);
    const int n = 400;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double x = -r1 + 2.0 * r1 * (i + 0.5) / n;
        const double y = -r1 + 2.0 * r1 * (j + 0.5) / n;
        if (x * x + y * y > r1 * r1) continue;
        const double dx = x - d;
        if (dx * dx + y * y <= r2 * r2) ++hits;
      }
    }
    const double cell = (2.0 * r1 / n) * (2.0 * r1 / n);
    CHECK(analytic == doctest::Approx(hits * cell).epsilon(0.02));
  }
}

TEST_CASE("classification fixtures") {
  auto ring = [](const Vec2& c, double lo, double hi) {
    Annulus a;
    a.center = c;
    a.r_inner = lo;
    a.r_outer = hi;
    a.empty = false;
    return a;
  };
  const Vec2 c(0.0, 0.0);
  CHECK(classify_problem_type(ring(c, 1.0, 2.0), ring(c, 0.2, 0.5), true) ==
        ProblemType::TypeI);
  CHECK(classify_problem_type(ring(c, 0.5, 1.2),
                              ring(Vec2(0.1, 0.0), 0.9, 1.6), true) ==
        ProblemType::TypeII);
  CHECK(classify_problem_type(ring(c, 0.2, 0.5), ring(c, 1.0, 2.0), true) ==
        ProblemType::TypeIII);
  CHECK(classify_problem_type(ring(c, 0.2, 0.5),
                              ring(Vec2(3.0, 0.0), 0.2, 0.5), false) ==
        ProblemType::TypeIV);

  // Stability away from tie boundaries.
  for (double eps : {-1e-9, 1e-9}) {
    CHECK(classify_problem_type(ring(c, 1.0 + eps, 2.0),
                                ring(c, 0.2, 0.5 - eps), true) ==
          ProblemType::TypeI);
    CHECK(classify_problem_type(ring(c, 0.5 + eps, 1.2),
                                ring(Vec2(0.1, 0.0), 0.9, 1.6 + eps), true) ==
          ProblemType::TypeII);
  }

  CHECK_THROWS_AS(classify_problem_type(Annulus{}, ring(c, 0.2, 0.5), true),
                  Unclassifiable);
  // Disjoint side by side with the MPOI inside matches no definition.
  CHECK_THROWS_AS(classify_problem_type(ring(c, 0.2, 0.5),
                                        ring(Vec2(3.0, 0.0), 0.2, 0.5), true),
                  Unclassifiable);
  // Containment with overlap is not a listed type either.
  CHECK_THROWS_AS(classify_problem_type(ring(c, 0.0, 2.0),
                                        ring(c, 0.0, 0.7), true),
                  Unclassifiable);
}
