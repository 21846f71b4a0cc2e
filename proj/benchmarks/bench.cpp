#include <benchmark/benchmark.h>

#include "ctc/criteria.hpp"
#include "ctc/families.hpp"
#include "ctc/geometry.hpp"

using namespace ctc;

static void BM_EvalHarmonic(benchmark::State& state) {
  const HarmonicMap map = from_family(Family::Parabola, static_cast<int>(state.range(0)));
  const Complex z{0.37, 0.41};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_harmonic(map, z));
  }
}
BENCHMARK(BM_EvalHarmonic)->Arg(64)->Arg(1024)->Arg(4096);

static void BM_TraceCircle(benchmark::State& state) {
  const HarmonicMap map = from_family(Family::Dilog, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_circle_image(map, 0.9, 720));
  }
}
BENCHMARK(BM_TraceCircle)->Arg(64)->Arg(1024);

static void BM_RotatedDifference(benchmark::State& state) {
  const HarmonicMap map = from_family(Family::Log, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_rotated_difference(map, 0.0));
  }
}
BENCHMARK(BM_RotatedDifference)->Arg(64)->Arg(1024);

static void BM_BestPhi(benchmark::State& state) {
  const HarmonicMap map = from_family(Family::Log, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_phi(map, 90));
  }
}
BENCHMARK(BM_BestPhi);

static void BM_BinomialDouble(benchmark::State& state) {
  const HarmonicMap map = from_family(Family::Dilog, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_binomial_double(map.h, 1.0, 0.0));
  }
}
BENCHMARK(BM_BinomialDouble)->Arg(32)->Arg(64)->Arg(128);

static void BM_CurvatureGrid(benchmark::State& state) {
  const HarmonicMap map = from_family(Family::Parabola, 256);
  GridSpec grid;
  grid.radii = {0.3, 0.6, 0.9};
  grid.angular_steps = 180;
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_curvature_bound(map.h, grid));
  }
}
BENCHMARK(BM_CurvatureGrid);

BENCHMARK_MAIN();
