#include <benchmark/benchmark.h>

#include "qfex/gfsym.hpp"

namespace {

using namespace qfex;

void BM_WittCensus(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(witt_ratio_census(n, 1, 2).family_size);
}
BENCHMARK(BM_WittCensus)->Arg(2)->Arg(3);

void BM_CosetLeaders(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto L = SymplecticSubspace::span(
      {SymplecticVector::from_rank(0b0101, n, 2)}, n, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(min_entropy_coset_leaders(L).size());
}
BENCHMARK(BM_CosetLeaders)->Arg(4)->Arg(6)->Arg(8);

void BM_DualSpace(benchmark::State& state) {
  const auto L = SymplecticSubspace::span(
      {SymplecticVector::from_string("01010101", 2),
       SymplecticVector::from_string("10101010", 2)},
      4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dual_space(L).dim());
}
BENCHMARK(BM_DualSpace);

}  // namespace
