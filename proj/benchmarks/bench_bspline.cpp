#include <benchmark/benchmark.h>

#include "freeknot/bspline.hpp"
#include "freeknot/model.hpp"
#include "freeknot/prior.hpp"
#include "freeknot/rng.hpp"

namespace {

freeknot::SplineState random_state(int dim, freeknot::Rng& rng) {
  freeknot::PriorConfig cfg{4, dim + 0.5, 200.0, 20000.0, 24.0};
  while (true) {
    freeknot::SplineState state = freeknot::sample_prior(cfg, rng);
    if (state.dim() == dim) return state;
  }
}

void BM_EvalSpline(benchmark::State& state) {
  freeknot::Rng rng(7);
  const freeknot::SplineState s = random_state(static_cast<int>(state.range(0)), rng);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    if (t >= 24.0) t = 0.0;
    benchmark::DoNotOptimize(s.eval(t));
  }
}
BENCHMARK(BM_EvalSpline)->Arg(6)->Arg(12)->Arg(24);

void BM_IntegrateSpline(benchmark::State& state) {
  freeknot::Rng rng(7);
  const freeknot::SplineState s = random_state(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        freeknot::integrate_spline(s.knots(), s.theta(), 3.0, 21.0));
  }
}
BENCHMARK(BM_IntegrateSpline)->Arg(6)->Arg(12)->Arg(24);

void BM_BinIntensities(benchmark::State& state) {
  freeknot::Rng rng(7);
  const freeknot::SplineState s = random_state(12, rng);
  const freeknot::DataLayout layout{24.0, static_cast<int>(state.range(0)), 50};
  for (auto _ : state) {
    benchmark::DoNotOptimize(freeknot::bin_intensities(s, layout));
  }
}
BENCHMARK(BM_BinIntensities)->Arg(288)->Arg(2880);

void BM_BasisInnerProducts(benchmark::State& state) {
  freeknot::Rng rng(7);
  const freeknot::SplineState s = random_state(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(freeknot::basis_inner_products(s.knots(), s.dim() / 2));
  }
}
BENCHMARK(BM_BasisInnerProducts)->Arg(6)->Arg(12)->Arg(24);

}  // namespace
