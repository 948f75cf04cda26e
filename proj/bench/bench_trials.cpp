// Serial reference loop vs OpenMP loop over the same seeded trials.

#include <benchmark/benchmark.h>

#include "equi/constructions.hpp"
#include "equi/halving.hpp"
#include "equi/trials.hpp"

namespace {

std::size_t block_trial(int, std::uint64_t seed) {
  const auto bsq = equi::block_structured_square(64, 16, seed);
  return equi::block_transversal(bsq.square, bsq.blocks, 4, seed).transversal.size();
}

void BM_trials_serial(benchmark::State& state) {
  const int trials = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(equi::run_trials_serial(trials, 1, block_trial));
  state.SetItemsProcessed(state.iterations() * trials);
}

void BM_trials_parallel(benchmark::State& state) {
  const int trials = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(equi::run_trials_parallel(trials, 1, 0, block_trial));
  state.SetItemsProcessed(state.iterations() * trials);
}

}  // namespace

BENCHMARK(BM_trials_serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trials_parallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
