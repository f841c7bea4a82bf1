#include <benchmark/benchmark.h>

#include "rjcf/jordan.hpp"
#include "rjcf/linalg.hpp"
#include "rjcf/montecarlo.hpp"
#include "rjcf/schur.hpp"

namespace {

rjcf::Matrix gaussian(std::size_t n, std::uint64_t seed) {
  rjcf::CounterStream s(seed, 0);
  return rjcf::gaussian_matrix(n, s);
}

void BM_Hessenberg(benchmark::State& state) {
  const auto a = gaussian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rjcf::hessenberg(a));
}
BENCHMARK(BM_Hessenberg)->RangeMultiplier(2)->Range(4, 64);

void BM_RealSchur(benchmark::State& state) {
  const auto a = gaussian(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(rjcf::real_schur(a));
}
BENCHMARK(BM_RealSchur)->RangeMultiplier(2)->Range(4, 128);

void BM_RealSchurEarlyDeflationFrom16(benchmark::State& state) {
  const auto a = gaussian(static_cast<std::size_t>(state.range(0)), 2);
  rjcf::SchurOptions opts;
  opts.aed_min_size = 16;
  for (auto _ : state) benchmark::DoNotOptimize(rjcf::real_schur(a, opts));
}
BENCHMARK(BM_RealSchurEarlyDeflationFrom16)->RangeMultiplier(2)->Range(16, 128);

void BM_RealSchurNoEarlyDeflation(benchmark::State& state) {
  const auto a = gaussian(static_cast<std::size_t>(state.range(0)), 2);
  rjcf::SchurOptions opts;
  opts.aggressive_deflation = false;
  for (auto _ : state) benchmark::DoNotOptimize(rjcf::real_schur(a, opts));
}
BENCHMARK(BM_RealSchurNoEarlyDeflation)->RangeMultiplier(2)->Range(16, 128);

void BM_SingularValues(benchmark::State& state) {
  const auto a = gaussian(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(rjcf::singular_values(a));
}
BENCHMARK(BM_SingularValues)->RangeMultiplier(2)->Range(4, 32);

void BM_CommutantOracle(benchmark::State& state) {
  const auto js = rjcf::generic_structure(static_cast<std::size_t>(state.range(0)), 2, 4);
  const auto a = rjcf::realize(js);
  for (auto _ : state) benchmark::DoNotOptimize(rjcf::commutant_dim_oracle(a));
}
BENCHMARK(BM_CommutantOracle)->DenseRange(4, 12, 4);

}  // namespace
