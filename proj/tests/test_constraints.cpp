#include <doctest.h>

#include <cmath>

#include "capm/constraints.hpp"
#include "test_support.hpp"

using namespace capm;
using namespace capm::test;

namespace {
const CameraModel kCam;

Troi centered_troi(double radius) {
  Troi t;
  t.center = Vec3(0.0, 0.0, 0.0);
  t.radius = radius;
  return t;
}

EePose rotate_about_z(const EePose& ee, const Vec3& pivot, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  auto rot = [&](const Vec3& v) {
    return Vec3(c * v.x() - s * v.y(), s * v.x() + c * v.y(), v.z());
  };
  EePose out;
  out.position = pivot + rot(ee.position - pivot);
  out.optical_axis = rot(ee.optical_axis);
  return out;
}
}  // namespace

TEST_CASE("coverage holds when the image circle fits the frame") {
  // radius 0.25 at height 1: image circle radius 150 px inside 640x480.
  CHECK(coverage_indicator(nadir_camera(1.0), kCam, centered_troi(0.25)) == 1);
}

TEST_CASE("coverage fails when the image circle exceeds the frame") {
  // radius 0.5: image radius 300 px > 240 px half-height.
  CHECK(coverage_indicator(nadir_camera(1.0), kCam, centered_troi(0.5)) == 0);
}

TEST_CASE("coverage is zero with the horizon in view") {
  EePose ee{Vec3(0.0, 0.0, 1.0), Vec3(std::sin(1.2), 0.0, -std::cos(1.2))};
  CHECK(coverage_indicator(ee, kCam, centered_troi(0.1)) == 0);
}

TEST_CASE("nsv composes coverage and resolution") {
  TaskParams params;
  params.delta = 0.05;  // nadir ratio is about 0.23
  CHECK(nsv_indicator(nadir_camera(1.0), kCam, centered_troi(0.25), params) ==
        1);
  params.delta = 0.25;  // resolution fails, coverage holds
  CHECK(nsv_indicator(nadir_camera(1.0), kCam, centered_troi(0.25), params) ==
        0);
  params.delta = 0.01;  // coverage fails regardless of delta
  CHECK(nsv_indicator(nadir_camera(1.0), kCam, centered_troi(0.5), params) ==
        0);
}

TEST_CASE("nsv agrees with the explicit conjunction on random poses") {
  TaskParams params;
  RngStream rng(21, 0);
  for (int i = 0; i < 1000; ++i) {
    EePose ee;
    ee.position =
        Vec3(rng.uniform() - 0.5, rng.uniform() - 0.5, 0.3 + 1.2 * rng.uniform());
    ee.optical_axis = random_down_axis(rng, 0.4);
    const Troi troi = centered_troi(0.1 + 0.3 * rng.uniform());
    const int nsv = nsv_indicator(ee, kCam, troi, params);
    const int cov = coverage_indicator(ee, kCam, troi);
    double ratio = 0.0;
    if (cov) {
      ratio = troi_area_ratio(ee, kCam, troi);
    }
    const int expected = (cov == 1 && ratio >= params.delta) ? 1 : 0;
    CHECK(nsv == expected);
    CHECK(nsv <= cov);  // NSV never true when coverage is false
  }
}

TEST_CASE("epmc checks the squared distance band inclusively") {
  TaskParams params;  // eps in [0.05, 0.10], aiming disabled by default
  Mpoi mpoi{Vec3(0.0, 0.0, 0.0)};
  auto at_sq = [&](double sq) {
    const double d = std::sqrt(sq);
    return EePose{Vec3(0.0, 0.0, d), Vec3(0.0, 0.0, -1.0)};
  };
  CHECK(epmc_indicator(at_sq(0.07), mpoi, params) == 1);
  CHECK(epmc_indicator(at_sq(0.04), mpoi, params) == 0);

  // Both band ends are inclusive: pin a threshold to the exact computed
  // squared distance and nudge it one ulp to flip the outcome.
  const EePose probe = at_sq(0.10);
  const double sq = (mpoi.point - probe.position).squaredNorm();
  params.eps_max = sq;
  CHECK(epmc_indicator(probe, mpoi, params) == 1);
  params.eps_max = std::nextafter(sq, 0.0);
  CHECK(epmc_indicator(probe, mpoi, params) == 0);
  params.eps_max = 10.0;
  params.eps_min = sq;
  CHECK(epmc_indicator(probe, mpoi, params) == 1);
  params.eps_min = std::nextafter(sq, 1.0);
  CHECK(epmc_indicator(probe, mpoi, params) == 0);
}

TEST_CASE("epmc aiming tolerance rejects a misaimed tool axis") {
  TaskParams params;
  params.aim_tol = 2.0 * kPi / 180.0;
  Mpoi mpoi{Vec3(0.0, 0.0, 0.0)};
  EePose aimed{Vec3(0.0, 0.0, std::sqrt(0.07)), Vec3(0.0, 0.0, -1.0)};
  CHECK(epmc_indicator(aimed, mpoi, params) == 1);
  EePose off{Vec3(0.0, 0.0, std::sqrt(0.07)),
             Vec3(std::sin(0.1), 0.0, -std::cos(0.1))};  // 5.7 degrees off
  CHECK(epmc_indicator(off, mpoi, params) == 0);
}

TEST_CASE("epmc is invariant under rotation about the MPOI vertical") {
  TaskParams params;
  params.aim_tol = 2.0 * kPi / 180.0;
  RngStream rng(5, 5);
  Mpoi mpoi{Vec3(0.4, -0.2, 0.0)};
  for (int i = 0; i < 1000; ++i) {
    EePose ee;
    ee.position = mpoi.point + Vec3(0.3 * (rng.uniform() - 0.5),
                                    0.3 * (rng.uniform() - 0.5),
                                    0.05 + 0.3 * rng.uniform());
    ee.optical_axis = (mpoi.point - ee.position).normalized();
    // Occasionally mis-aim to exercise both outcomes.
    if (rng.uniform() < 0.3) {
      ee.optical_axis = random_down_axis(rng);
    }
    const int base = epmc_indicator(ee, mpoi, params);
    const double angle = 2.0 * kPi * rng.uniform();
    const EePose rotated = rotate_about_z(ee, mpoi.point, angle);
    CHECK(epmc_indicator(rotated, mpoi, params) == base);
  }
}

TEST_CASE("raising delta can only turn nsv off") {
  RngStream rng(31, 7);
  for (int i = 0; i < 1000; ++i) {
    EePose ee;
    ee.position =
        Vec3(rng.uniform() - 0.5, rng.uniform() - 0.5, 0.4 + rng.uniform());
    ee.optical_axis = random_down_axis(rng, 0.5);
    const Troi troi = centered_troi(0.1 + 0.2 * rng.uniform());
    TaskParams lo, hi;
    lo.delta = 0.02 + 0.3 * rng.uniform();
    hi.delta = lo.delta + 0.3 * rng.uniform();
    CHECK(nsv_indicator(ee, kCam, troi, hi) <=
          nsv_indicator(ee, kCam, troi, lo));
  }
}

TEST_CASE("mtc requires the held condition and the tick threshold") {
  TaskParams params;
  params.xi = 3;
  CHECK(mtc_check(3, true, params) == 1);
  CHECK(mtc_check(2, true, params) == 0);
  CHECK(mtc_check(10, false, params) == 0);
}

TEST_CASE("mtc is monotone in hold ticks") {
  TaskParams params;
  params.xi = 4;
  int prev = 0;
  for (int t = 0; t <= 10; ++t) {
    const int cur = mtc_check(t, true, params);
    CHECK(cur >= prev);
    prev = cur;
  }
}
