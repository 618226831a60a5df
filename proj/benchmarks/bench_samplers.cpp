#include <benchmark/benchmark.h>

#include "tailtau/copula_sim.hpp"
#include "tailtau/evt_theory.hpp"
#include "tailtau/rng.hpp"

namespace {

void BM_SampleAsymLogistic(benchmark::State& state) {
  tailtau::RngStream rng(1, 0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tailtau::sample_asym_logistic({0.4, 0.3, 0.8}, n, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleAsymLogistic)->Arg(1000)->Arg(100000);

void BM_SampleHuslerReiss(benchmark::State& state) {
  tailtau::RngStream rng(2, 0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tailtau::sample_husler_reiss({1.0}, n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleHuslerReiss)->Arg(1000)->Arg(100000);

void BM_TauLimitMc(benchmark::State& state) {
  tailtau::RngStream rng(3, 0);
  const auto sampler = tailtau::hr_extremal_sampler(1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tailtau::tau_limit_mc(sampler, n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TauLimitMc)->Arg(1 << 16)->Arg(1 << 20);

void BM_DualDirichlet(benchmark::State& state) {
  tailtau::RngStream rng(4, 0);
  const auto dual = tailtau::dual_extremal_sampler(tailtau::dirichlet_extremal_sampler(2.0, 5.0).w12);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dual.sample(n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DualDirichlet)->Arg(1 << 16);

}  // namespace
