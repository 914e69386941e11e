#include <benchmark/benchmark.h>

#include "qwalk/analysis.hpp"
#include "qwalk/evolution.hpp"

namespace {

using namespace qwalk;

/// A sigma_plus walk advanced to time `t`, so the window holds 2t + 1 sites.
WalkerState spread_state(std::int64_t t, double chi) {
  WalkerState s = new_localized(0, coin_basis(BasisName::sigma_plus));
  for (std::int64_t i = 0; i < t; ++i) step(s, {chi});
  return s;
}

void BM_Step(benchmark::State& st) {
  const double chi = static_cast<double>(st.range(1)) / 10.0;
  const WalkerState start = spread_state(st.range(0), chi);
  for (auto _ : st) {
    st.PauseTiming();
    WalkerState s = start;
    st.ResumeTiming();
    step(s, {chi});
    benchmark::DoNotOptimize(s.sites().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(start.site_count()));
}
BENCHMARK(BM_Step)->ArgsProduct({{1000, 10000}, {0, 6}})->ArgNames({"t", "chi_x10"});

void BM_Observables(benchmark::State& st) {
  const WalkerState s = spread_state(st.range(0), 0.6);
  for (auto _ : st) {
    benchmark::DoNotOptimize(participation_ratio(s));
    benchmark::DoNotOptimize(survival_probability(s));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.site_count()));
}
BENCHMARK(BM_Observables)->Arg(1000)->Arg(10000);

void BM_Evolve(benchmark::State& st) {
  for (auto _ : st) {
    const RunRecord r = evolve(new_localized(0, coin_basis(BasisName::sigma_plus)), {0.6},
                               {.steps = st.range(0), .record_every = st.range(0)});
    benchmark::DoNotOptimize(r.participation.values.data());
  }
}
BENCHMARK(BM_Evolve)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Detrap(benchmark::State& st) {
  const RunRecord r = evolve(new_localized(0, coin_basis(BasisName::sigma_plus)), {0.6}, {.steps = 5000, .record_every = 5000});
  for (auto _ : st) benchmark::DoNotOptimize(detect_detrapping_time(r.participation));
}
BENCHMARK(BM_Detrap)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
