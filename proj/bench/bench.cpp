// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "argeslab/cig.hpp"
#include "argeslab/correlation.hpp"
#include "argeslab/search.hpp"
#include "argeslab/simulation.hpp"

using namespace argeslab;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

const Dataset& data(int p, int n) {
  static const Dataset d30 = sample_sem(random_sem(30, 30, 1), 4000, 1);
  static const Dataset d80 = sample_sem(random_sem(80, 80, 2), 400, 2);
  return p == 30 && n == 4000 ? d30 : d80;
}

void BM_KendallMatrix(benchmark::State& state) {
  const Dataset& d = data(30, 4000);
  for (auto _ : state) benchmark::DoNotOptimize(rank_correlation(d, CorrKind::Kendall, exec_of(state)));
}

void BM_ForwardPhase(benchmark::State& state) {
  const Dataset& d = data(80, 400);
  const CorrSource src = sample_correlation(d);
  for (auto _ : state) {
    // Fresh model each time so the score cache does not carry over.
    ScoreModel m(src, bic_lambda(d.n()));
    benchmark::DoNotOptimize(forward_phase(Cpdag::empty(d.p()), m, RestrictionPolicy::unrestricted(), exec_of(state)));
  }
}

void BM_NeighborhoodSelection(benchmark::State& state) {
  const Dataset& d = data(80, 400);
  CigConfig cfg;
  cfg.gamma = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(neighborhood_selection(d, cfg, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_KendallMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ForwardPhase)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NeighborhoodSelection)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
