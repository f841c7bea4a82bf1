#include <benchmark/benchmark.h>

#include "rjcf/montecarlo.hpp"

namespace {

void BM_Census(benchmark::State& state) {
  rjcf::EnsembleSpec spec;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.trials = 2000;
  spec.workers = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(rjcf::run_census(spec));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * spec.trials));
}
BENCHMARK(BM_Census)->Args({8, 1})->Args({9, 1})->Args({15, 1})->Args({8, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CensusRatio(benchmark::State& state) {
  rjcf::EnsembleSpec spec;
  spec.n = 8;
  spec.trials = 2000;
  spec.method = rjcf::CensusMethod::RatioTolerance;
  for (auto _ : state) benchmark::DoNotOptimize(rjcf::run_census(spec));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * spec.trials));
}
BENCHMARK(BM_CensusRatio)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_TrialMatrix(benchmark::State& state) {
  rjcf::EnsembleSpec spec;
  spec.n = 15;
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rjcf::trial_matrix(spec, t++));
}
BENCHMARK(BM_TrialMatrix);

}  // namespace
BENCHMARK_MAIN();
