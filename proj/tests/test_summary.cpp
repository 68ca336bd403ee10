#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "freeknot/prior.hpp"
#include "freeknot/rng.hpp"
#include "freeknot/summary.hpp"

using namespace freeknot;

namespace {

ChainDraw make_draw(long iter, SplineState state, MoveKind move, bool accepted) {
  const double lp = 0.0;
  return ChainDraw{iter, std::move(state), move, accepted, lp};
}

SplineState constant_state(double value, double period = 24.0) {
  return SplineState(4, period, {}, std::vector<double>(4, value));
}

}  // namespace

TEST_SUITE("summary") {

TEST_CASE("interpolated quantiles") {
  const std::vector<double> two{1.0, 3.0};
  CHECK(quantile_sorted(two, 0.25) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(quantile_sorted(two, 0.75) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(quantile_sorted(two, 0.0) == 1.0);
  CHECK(quantile_sorted(two, 1.0) == 3.0);
  const std::vector<double> five{0.0, 1.0, 2.0, 3.0, 4.0};
  CHECK(quantile_sorted(five, 0.5) == 2.0);
  CHECK(quantile_sorted(five, 0.375) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("band") {
  SUBCASE("identical draws degenerate to a line") {
    std::vector<ChainDraw> draws;
    for (int i = 0; i < 5; ++i) {
      draws.push_back(make_draw(i, constant_state(7.0), MoveKind::perturb, true));
    }
    const CredibleBand cb = band(draws, 33, 0.95);
    REQUIRE(cb.grid.size() == 33);
    CHECK(cb.grid.front() == 0.0);
    CHECK(cb.grid.back() == 24.0);
    for (std::size_t g = 0; g < cb.grid.size(); ++g) {
      CHECK(cb.mean[g] == doctest::Approx(7.0).epsilon(1e-14));
      CHECK(cb.lower[g] == doctest::Approx(7.0).epsilon(1e-14));
      CHECK(cb.upper[g] == doctest::Approx(7.0).epsilon(1e-14));
    }
  }
  SUBCASE("two-draw interpolation") {
    std::vector<ChainDraw> draws;
    draws.push_back(make_draw(0, constant_state(1.0), MoveKind::perturb, true));
    draws.push_back(make_draw(1, constant_state(3.0), MoveKind::perturb, false));
    const CredibleBand cb = band(draws, 5, 0.5);
    for (std::size_t g = 0; g < cb.grid.size(); ++g) {
      CHECK(cb.mean[g] == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(cb.lower[g] == doctest::Approx(1.5).epsilon(1e-14));
      CHECK(cb.upper[g] == doctest::Approx(2.5).epsilon(1e-14));
    }
  }
  SUBCASE("band ordering and monotonicity in the level") {
    Rng rng(71);
    const PriorConfig cfg{4, 9.0, 0.5, 10.0, 24.0};
    std::vector<ChainDraw> draws;
    for (int i = 0; i < 400; ++i) {
      draws.push_back(make_draw(i, sample_prior(cfg, rng), MoveKind::perturb, true));
    }
    const CredibleBand narrow = band(draws, 65, 0.90);
    const CredibleBand wide = band(draws, 65, 0.99);
    for (std::size_t g = 0; g < narrow.grid.size(); ++g) {
      CHECK(narrow.lower[g] <= narrow.mean[g] + 1e-12);
      CHECK(narrow.mean[g] <= narrow.upper[g] + 1e-12);
      CHECK(wide.lower[g] <= narrow.lower[g] + 1e-12);
      CHECK(narrow.upper[g] <= wide.upper[g] + 1e-12);
    }
  }
  SUBCASE("input validation") {
    std::vector<ChainDraw> one{make_draw(0, constant_state(1.0), MoveKind::perturb, true)};
    CHECK_THROWS_AS(band(one, 16, 0.95), std::invalid_argument);
    std::vector<ChainDraw> two{make_draw(0, constant_state(1.0), MoveKind::perturb, true),
                               make_draw(1, constant_state(2.0), MoveKind::perturb, true)};
    CHECK_THROWS_AS(band(two, 16, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(band(two, 16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(band(two, 1, 0.95), std::invalid_argument);
  }
}

TEST_CASE("knot histogram") {
  SUBCASE("no interior knots: empty histogram") {
    std::vector<ChainDraw> draws{
        make_draw(0, constant_state(1.0), MoveKind::perturb, true)};
    const KnotHistogram hist = knot_histogram(draws, 4);
    long total = 0;
    for (long c : hist.counts) total += c;
    CHECK(total == 0);
  }
  SUBCASE("single draw with two knots") {
    // Dimension 6 over T = 24: grid of 36, position = idx * 24 / 37.
    // Indices 9 and 28 sit at about 5.8 and 18.2 hours.
    const SplineState s(4, 24.0, {9, 28}, std::vector<double>(6, 1.0));
    std::vector<ChainDraw> draws{make_draw(0, s, MoveKind::birth, true)};
    const KnotHistogram hist = knot_histogram(draws, 2);
    CHECK(hist.counts[0] == 1);
    CHECK(hist.counts[1] == 1);
    CHECK(hist.edges.front() == 0.0);
    CHECK(hist.edges.back() == 24.0);
  }
  SUBCASE("counts conserve the pooled knot count and ignore order") {
    Rng rng(72);
    const PriorConfig cfg{4, 10.0, 0.5, 10.0, 24.0};
    std::vector<ChainDraw> draws;
    long expected = 0;
    for (int i = 0; i < 200; ++i) {
      const SplineState s = sample_prior(cfg, rng);
      expected += s.dim() - 4;
      draws.push_back(make_draw(i, s, MoveKind::perturb, true));
    }
    const KnotHistogram hist = knot_histogram(draws, 96);
    long total = 0;
    for (long c : hist.counts) total += c;
    CHECK(total == expected);

    std::vector<ChainDraw> shuffled(draws.rbegin(), draws.rend());
    const KnotHistogram hist2 = knot_histogram(shuffled, 96);
    CHECK(hist2.counts == hist.counts);
  }
}

TEST_CASE("dimension trace and acceptance table") {
  std::vector<ChainDraw> draws;
  draws.push_back(make_draw(10, constant_state(1.0), MoveKind::perturb, true));
  draws.push_back(make_draw(20, constant_state(2.0), MoveKind::perturb, false));
  draws.push_back(make_draw(30, SplineState(4, 24.0, {7}, std::vector<double>(5, 1.0)),
                            MoveKind::birth, true));
  draws.push_back(make_draw(40, constant_state(3.0), MoveKind::death, true));
  draws.push_back(make_draw(50, constant_state(3.0), MoveKind::knot_move, false));

  const DimTrace trace = dim_trace(draws);
  CHECK(trace.iteration == std::vector<long>{10, 20, 30, 40, 50});
  CHECK(trace.dim == std::vector<int>{4, 4, 5, 4, 4});
  CHECK(trace.rate(MoveKind::perturb) == doctest::Approx(0.5));
  CHECK(trace.rate(MoveKind::birth) == doctest::Approx(1.0));
  CHECK(trace.rate(MoveKind::death) == doctest::Approx(1.0));
  CHECK(trace.rate(MoveKind::knot_move) == doctest::Approx(0.0));

  // Recount oracle: rates equal accepted/proposed recomputed from the dump.
  std::array<long, 4> prop{}, acc{};
  for (const ChainDraw& d : draws) {
    ++prop[static_cast<std::size_t>(d.move)];
    if (d.accepted) ++acc[static_cast<std::size_t>(d.move)];
  }
  for (int k = 0; k < 4; ++k) {
    const auto kind = static_cast<MoveKind>(k);
    const double expected =
        prop[static_cast<std::size_t>(k)] == 0
            ? 0.0
            : static_cast<double>(acc[static_cast<std::size_t>(k)]) /
                  static_cast<double>(prop[static_cast<std::size_t>(k)]);
    CHECK(trace.rate(kind) == doctest::Approx(expected).epsilon(1e-15));
  }
}

}  // TEST_SUITE
