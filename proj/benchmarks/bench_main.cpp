#include <benchmark/benchmark.h>

#include "ptspec/eigen.hpp"
#include "ptspec/hamiltonian.hpp"
#include "ptspec/pade.hpp"
#include "ptspec/perturb.hpp"

using namespace ptspec;

static void BM_SeriesGroundState(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(effective_series(Model::Cubic12, 0, order));
}
BENCHMARK(BM_SeriesGroundState)->Arg(8)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_SeriesHenonHeilesLevel5(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(effective_series(Model::HenonHeiles, 5, 8));
}
BENCHMARK(BM_SeriesHenonHeilesLevel5)->Unit(benchmark::kMillisecond);

static void BM_BuildBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_block(ModelSpec{Model::Cubic12, 1.0, Parity::Even, TruncationScheme{n}}));
}
BENCHMARK(BM_BuildBlock)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Diagonalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool vectors = state.range(1) != 0;
  SparseComplexMatrix h = build_block(ModelSpec{Model::Cubic12, 1.0, Parity::Even, TruncationScheme{n}});
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h, EigenOptions{vectors, vectors ? 30u : 0u, 1e-9}));
}
BENCHMARK(BM_Diagonalize)->Args({20, 0})->Args({50, 0})->Args({50, 1})->Unit(benchmark::kMillisecond);

static void BM_Pade(benchmark::State& state) {
  const int half = static_cast<int>(state.range(0));
  EnergySeries s = effective_series(Model::Cubic12, 0, 2 * half).at(0);
  for (auto _ : state) benchmark::DoNotOptimize(build_pade(s, half, half));
}
BENCHMARK(BM_Pade)->Arg(6)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
