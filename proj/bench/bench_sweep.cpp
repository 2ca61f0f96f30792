// Serial reference sweep vs the OpenMP sweep on the 2001-point V0 grids.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "spinscat/sweep.hpp"

using namespace spinscat;

namespace {

SweepSpec grid(double x0_nm, int points) {
  SweepSpec s;
  s.base = ScatteringProblem::from_lab_units(100.0, 0.0, x0_nm, 4.0);
  s.start = -100.0;
  s.stop = 400.0;
  s.points = points;
  return s;
}

void BM_SweepSerial(benchmark::State& state) {
  const SweepSpec s = grid(static_cast<double>(state.range(0)), 2001);
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(s));
  state.SetItemsProcessed(state.iterations() * s.points);
}

void BM_SweepOpenMP(benchmark::State& state) {
  const SweepSpec s = grid(static_cast<double>(state.range(0)), 2001);
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(s, workers));
  state.SetItemsProcessed(state.iterations() * s.points);
  state.counters["workers"] = workers;
}

void worker_args(benchmark::internal::Benchmark* b) {
  const int max = omp_get_max_threads();
  for (int x0 : {6, 100})
    for (int w = 1; w <= max; w *= 2) b->Args({x0, w});
}

void BM_SolveOne(benchmark::State& state) {
  const ScatteringProblem p = ScatteringProblem::from_lab_units(100.0, 140.0, 6.0, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}

} // namespace

BENCHMARK(BM_SweepSerial)->Arg(6)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOpenMP)->Apply(worker_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolveOne)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
