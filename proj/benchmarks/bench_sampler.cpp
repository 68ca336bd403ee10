#include <benchmark/benchmark.h>

#include "freeknot/data.hpp"
#include "freeknot/rng.hpp"
#include "freeknot/sampler.hpp"
#include "freeknot/simulate.hpp"

namespace {

struct Fixture {
  freeknot::PriorConfig prior{4, 10.0, 200.0, 20000.0, 24.0};
  freeknot::MoveSchedule schedule{0.4, 0.2, 4, 10.0};
  freeknot::BinnedCounts counts;

  explicit Fixture(int bins)
      : counts(make_counts(bins)) {}

  static freeknot::BinnedCounts make_counts(int bins) {
    freeknot::Rng rng(11);
    const freeknot::DataLayout layout{24.0, bins, 10};
    const freeknot::EventPath path = freeknot::simulate_path(
        [](double t) { return 1000.0 + 800.0 * std::sin(2.0 * 3.141592653589793 * t / 24.0); },
        1800.0, layout, rng);
    return freeknot::bin_events(path);
  }
};

void BM_LoglikBinned(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  freeknot::Rng rng(3);
  const freeknot::SplineState s = freeknot::sample_prior(fx.prior, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(freeknot::loglik_binned(s, fx.counts));
  }
}
BENCHMARK(BM_LoglikBinned)->Arg(288)->Arg(2880);

void BM_ChainIteration(benchmark::State& state) {
  Fixture fx(static_cast<int>(state.range(0)));
  freeknot::ChainConfig cfg;
  cfg.prior = fx.prior;
  cfg.schedule = fx.schedule;
  cfg.iterations = 1000;
  cfg.burn_in = 0;
  cfg.thin = 1000;
  cfg.seed = 5;
  const freeknot::PosteriorTarget target{fx.prior, &fx.counts, nullptr};
  const freeknot::SplineState init = freeknot::flat_init(fx.prior, 1000.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(freeknot::run_chain(cfg, target, init));
  }
  state.SetItemsProcessed(state.iterations() * cfg.iterations);
}
BENCHMARK(BM_ChainIteration)->Arg(288)->Unit(benchmark::kMillisecond);

}  // namespace
