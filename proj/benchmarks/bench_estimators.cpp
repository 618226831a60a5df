#include <vector>

#include <benchmark/benchmark.h>

#include "tailtau/core_stats.hpp"
#include "tailtau/rng.hpp"
#include "tailtau/tail_dependence.hpp"

namespace {

tailtau::PairedSample normal_pairs(std::size_t n) {
  tailtau::RngStream rng(1, n);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.normal();
    y[i] = 0.5 * x[i] + rng.normal();
  }
  return tailtau::PairedSample(std::move(x), std::move(y));
}

void BM_KendallTau(benchmark::State& state) {
  const auto s = normal_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tailtau::kendall_tau(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallTau)->RangeMultiplier(4)->Range(1 << 8, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_TailTauPair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = normal_pairs(n);
  const auto spec = tailtau::ThresholdSpec::from_q(0.98, n);
  for (auto _ : state) benchmark::DoNotOptimize(tailtau::tail_tau_pair(s, spec));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TailTauPair)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_ChiHat(benchmark::State& state) {
  const auto s = normal_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tailtau::chi_hat(s, 0.98));
}
BENCHMARK(BM_ChiHat)->Arg(1 << 14)->Arg(1 << 18);

}  // namespace
