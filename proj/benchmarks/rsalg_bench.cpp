#include <benchmark/benchmark.h>

#include "rsalg/hopf.hpp"
#include "rsalg/numeric_model.hpp"
#include "rsalg/prep.hpp"
#include "rsalg/rules.hpp"

namespace {

using namespace rsalg;

void BM_Enumerate(benchmark::State& state) {
  const RuleSet rules = RuleSet::from_name("gkpz", 3, static_cast<int>(state.range(0)));
  std::size_t n = 0;
  for (auto _ : state) {
    const auto t0 = enumerate_T0(rules);
    n = t0.size();
    benchmark::DoNotOptimize(t0.data());
  }
  state.counters["trees"] = static_cast<double>(n);
}
BENCHMARK(BM_Enumerate)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

// Cold memo tables: a fresh Hopf per iteration.
void BM_CoactionCold(benchmark::State& state) {
  const RuleSet rules = RuleSet::from_name("gkpz", 3, static_cast<int>(state.range(0)));
  const auto t1 = lift_T1(enumerate_T0(rules));
  for (auto _ : state) {
    Hopf hopf(rules.default_params());
    std::size_t terms = 0;
    for (const auto& t : t1) terms += hopf.coaction(DegreeKind::Zero, t).size();
    benchmark::DoNotOptimize(terms);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t1.size()));
}
BENCHMARK(BM_CoactionCold)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_DeltaHat(benchmark::State& state) {
  const RuleSet rules = RuleSet::from_name("gkpz", 3, 6);
  const auto t1 = lift_T1(enumerate_T0(rules));
  for (auto _ : state) {
    Hopf hopf(rules.default_params());
    std::size_t terms = 0;
    for (const auto& t : t1) terms += hopf.delta_hat0(t).size();
    benchmark::DoNotOptimize(terms);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t1.size()));
}
BENCHMARK(BM_DeltaHat)->Unit(benchmark::kMillisecond);

void BM_PrepApply(benchmark::State& state) {
  const auto t1 = lift_T1(enumerate_T0(RuleSet::from_name("qua_c", 3, 8)));
  const PrepMap R = PrepMap::quasilinear(1);
  for (auto _ : state)
    for (const auto& t : t1) benchmark::DoNotOptimize(R.apply(t).size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t1.size()));
}
BENCHMARK(BM_PrepApply)->Unit(benchmark::kMillisecond);

void BM_Convolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g(n, n, 1);
  const KernelFamily k(g, 0.4, 4);
  const NoisePair xi = NoisePair::trigonometric(g);
  const MultiIndex a{0, 1};
  benchmark::DoNotOptimize(k.dense(a).data());
  for (auto _ : state) benchmark::DoNotOptimize(k.convolve(a, xi.xi).data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_Convolve)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMicrosecond);

void BM_CentralDifference(benchmark::State& state) {
  const Grid g(48, 32, 1);
  const Field f = NoisePair::trigonometric(g).xi;
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(central_difference(g, f, 1, m).data());
}
BENCHMARK(BM_CentralDifference)->DenseRange(1, 5)->Unit(benchmark::kMicrosecond);

// Recentred fields of every tree at one base point, cold caches.
void BM_ModelFields(benchmark::State& state) {
  const Grid g(48, 32, 1);
  const Hopf hopf(DegreeParams::defaults());
  const PrepMap R = PrepMap::trivial();
  const auto t1 = lift_T1(enumerate_T0(RuleSet::from_name("gkpz", 2, 5)));
  auto kernels = std::make_shared<const KernelFamily>(g, 0.4, exact_half_width(t1, hopf.params()));
  const GridModel M(kernels, NoisePair::trigonometric(g), hopf, R);
  const Point x{12, 10};
  for (auto _ : state) {
    for (const auto& t : t1) benchmark::DoNotOptimize(M.pi(DegreeKind::Zero, x, t).data());
    M.clear_cache();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t1.size()));
}
BENCHMARK(BM_ModelFields)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
