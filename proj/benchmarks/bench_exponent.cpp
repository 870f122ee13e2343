#include <benchmark/benchmark.h>

#include "qfex/exponent.hpp"

namespace {

using namespace qfex;

void BM_ErrorExponent(benchmark::State& state) {
  const ErrorDistribution p(2, {0.9, 0.05, 0.03, 0.02});
  const double rate = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(error_exponent(rate, p).value);
}
BENCHMARK(BM_ErrorExponent)->Arg(10)->Arg(50)->Arg(90);

void BM_ErrorExponentTilted(benchmark::State& state) {
  const ErrorDistribution p(2, {0.9, 0.05, 0.03, 0.02});
  for (auto _ : state)
    benchmark::DoNotOptimize(error_exponent_tilted(0.3, p, false).value);
}
BENCHMARK(BM_ErrorExponentTilted);

void BM_EntangledOverlap(benchmark::State& state) {
  const auto ch = QuantumChannel::amplitude_damping(0.3);
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(entangled_overlap_maximum(ch, seed++).p_prime);
}
BENCHMARK(BM_EntangledOverlap);

}  // namespace
