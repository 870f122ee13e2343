#include <benchmark/benchmark.h>

#include "qfex/simkit.hpp"

namespace {

using namespace qfex;

const SymplecticSubspace& example_stabilizer() {
  static const SymplecticSubspace L = SymplecticSubspace::span(
      {SymplecticVector::from_string("0101", 2)}, 2, 2);
  return L;
}

void BM_BuildCodes(benchmark::State& state) {
  const ErrorBasis basis = ErrorBasis::standard(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_codes(example_stabilizer(), basis).size());
}
BENCHMARK(BM_BuildCodes);

void BM_MinFidelity(benchmark::State& state) {
  const ErrorBasis basis = ErrorBasis::standard(2);
  const auto codes = build_codes(example_stabilizer(), basis);
  const auto chn = QuantumChannel::amplitude_damping(0.3).tensor_power(2);
  const RecoveryMap rec = build_recovery(codes[0], basis);
  OptimizerOptions opts;
  opts.starts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    opts.seed++;
    benchmark::DoNotOptimize(min_fidelity(codes[0], chn, rec, opts).value);
  }
}
BENCHMARK(BM_MinFidelity)->Arg(8)->Arg(32);

void BM_EnsembleCheck(benchmark::State& state) {
  const ErrorBasis basis = ErrorBasis::standard(2);
  const auto ch = QuantumChannel::amplitude_damping(0.3);
  EnsembleOptions options;
  options.optimizer.starts = 8;
  for (auto _ : state) {
    options.optimizer.seed++;
    benchmark::DoNotOptimize(
        check_ensemble_bound(example_stabilizer(), ch, basis, options).rhs);
  }
}
BENCHMARK(BM_EnsembleCheck);

void BM_PreskillBound(benchmark::State& state) {
  const ErrorBasis basis = ErrorBasis::standard(2);
  const auto codes = build_codes(example_stabilizer(), basis);
  const auto ch = QuantumChannel::amplitude_damping(0.3);
  const auto correctable =
      enlarge_correctable_set(example_stabilizer(), codes[0].leaders);
  const Ket psi = codes[0].code_basis.col(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        preskill_lower_bound(psi, ch, 2, correctable, basis));
}
BENCHMARK(BM_PreskillBound);

}  // namespace
