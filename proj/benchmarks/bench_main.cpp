#include <benchmark/benchmark.h>

#include "capm/planner.hpp"
#include "capm/sim.hpp"

namespace {

using namespace capm;

const CameraModel kCam;

Troi default_troi() {
  Troi t;
  t.center = Vec3(0.3, 0.4, 0.0);
  t.radius = 0.25;
  return t;
}

void BM_NsvIndicator(benchmark::State& state) {
  EePose ee{Vec3(0.6, 0.4, 0.6), Vec3(0.0, 0.0, -1.0)};
  ee.optical_axis = (default_troi().center - ee.position).normalized();
  TaskParams task;
  const Troi troi = default_troi();
  for (auto _ : state) {
    benchmark::DoNotOptimize(nsv_indicator(ee, kCam, troi, task));
  }
}
BENCHMARK(BM_NsvIndicator);

void BM_TroiAreaRatio(benchmark::State& state) {
  EePose ee{Vec3(0.3, 0.4, 1.0), Vec3(0.0, 0.0, -1.0)};
  const Troi troi = default_troi();
  for (auto _ : state) {
    benchmark::DoNotOptimize(troi_area_ratio(ee, kCam, troi));
  }
}
BENCHMARK(BM_TroiAreaRatio);

void BM_ComputeRo(benchmark::State& state) {
  ArmModel arm;
  TaskParams task;
  SearchGrid grid;
  const Troi troi = default_troi();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_ro(troi, arm, kCam, task, grid, 0.8));
  }
}
BENCHMARK(BM_ComputeRo);

void BM_ComputeRm(benchmark::State& state) {
  ArmModel arm;
  TaskParams task;
  SearchGrid grid;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_rm(Vec2(0.0, 0.0), arm, task, grid, 0.8));
  }
}
BENCHMARK(BM_ComputeRm);

void BM_PFeasibleOverSamples(benchmark::State& state) {
  const PlannerContext ctx = finalize_context(PlannerContext{});
  MpoiDistribution dist = ctx.mpoi_distribution(default_troi());
  RngStream rng(1, 1);
  const std::vector<Vec2> samples =
      draw_mpoi_samples(dist, default_troi(), 2000, rng);
  BodyPose body;
  body.position = Vec2(0.5, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        p_feasible_over_samples(body, samples, ctx.rm_shape));
  }
}
BENCHMARK(BM_PFeasibleOverSamples);

void BM_PlanCapm(benchmark::State& state) {
  const PlannerContext ctx = finalize_context(PlannerContext{});
  const Troi troi = default_troi();
  BodyPose start, end;
  start.position = Vec2(-1.375, 0.0);
  end.position = Vec2(1.375, 0.0);
  const Annulus ro =
      compute_ro(troi, ctx.arm, kCam, ctx.task, ctx.search, 0.8);
  const MpoiDistribution dist = ctx.mpoi_distribution(troi);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RngStream rng(seed++, 2);
    benchmark::DoNotOptimize(
        plan_capm(start, end, troi, ro, ctx.rm_shape, dist, ctx, rng));
  }
}
BENCHMARK(BM_PlanCapm)->Unit(benchmark::kMillisecond);

void BM_ExecuteTrial(benchmark::State& state) {
  const PlannerContext ctx = finalize_context(PlannerContext{});
  TrialScene scene;
  scene.start.position = Vec2(-1.375, 0.0);
  scene.end.position = Vec2(1.375, 0.0);
  scene.troi = default_troi();
  scene.mpoi = Mpoi{Vec3(0.35, 0.45, 0.0)};
  const PlannerKind kind =
      static_cast<PlannerKind>(static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RngStream rng(seed++, 3);
    benchmark::DoNotOptimize(execute_trial(kind, scene, ctx, rng));
  }
}
BENCHMARK(BM_ExecuteTrial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
