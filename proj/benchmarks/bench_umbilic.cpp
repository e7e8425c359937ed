#include <benchmark/benchmark.h>

#include <cmath>

#include "umbilic/classifier.hpp"
#include "umbilic/constructor.hpp"
#include "umbilic/semidirect.hpp"
#include "umbilic/surface.hpp"

using namespace umbilic;

static void BM_MatrixExp(benchmark::State& state) {
  const Matrix2 a = nonunimodular_matrix({2.0, 0.7});
  double z = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_exp(a, z));
    z = -z;
  }
}
BENCHMARK(BM_MatrixExp);

static void BM_ShapeOperator(benchmark::State& state) {
  const UmbilicProfile p = solve_profile_closed(2.0, 1.0, 5.0, 1e-3);
  const SurfacePatch s = build_invariant_surface(p);
  double v = 0.5 * p.y_max();
  for (auto _ : state) {
    benchmark::DoNotOptimize(shape_operator(s, 0.25, v));
    v = -v;
  }
}
BENCHMARK(BM_ShapeOperator);

static void BM_ClosedProfile(benchmark::State& state) {
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_profile_closed(2.0, 1.0, 5.0, step));
}
BENCHMARK(BM_ClosedProfile)->Arg(1000)->Arg(4000)->Arg(16000)->Unit(benchmark::kMicrosecond);

static void BM_ShootingProfile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_profile_shooting(-1.0, 0.0, 1e-3, 5.0));
}
BENCHMARK(BM_ShootingProfile)->Unit(benchmark::kMillisecond);

static void BM_GaussLocus(benchmark::State& state) {
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_locus({0.057, 0.013}, resolution));
}
BENCHMARK(BM_GaussLocus)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_ClassifyUnimodular(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify_unimodular({1, 0, -1}));
}
BENCHMARK(BM_ClassifyUnimodular);

static void BM_ClassifyNonUnimodular(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify_nonunimodular({0.5, 1.0}));
}
BENCHMARK(BM_ClassifyNonUnimodular)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
