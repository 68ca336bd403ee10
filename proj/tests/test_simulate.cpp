#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "freeknot/data.hpp"
#include "freeknot/rng.hpp"
#include "freeknot/simulate.hpp"

using namespace freeknot;

TEST_SUITE("simulate") {

TEST_CASE("zero intensity gives an empty path") {
  Rng rng(61);
  const EventPath path =
      simulate_path([](double) { return 0.0; }, 1.0, DataLayout{24.0, 4, 3}, rng);
  CHECK(path.times().empty());
}

TEST_CASE("homogeneous case: count moments match the Poisson law") {
  Rng rng(62);
  const double rate = 5.0;
  const DataLayout layout{2.0, 1, 3};  // horizon 6, mean 30
  const long reps = 2000;
  double sum = 0.0, sum_sq = 0.0;
  for (long r = 0; r < reps; ++r) {
    const EventPath path =
        simulate_path([&](double) { return rate; }, rate, layout, rng);
    const double n = static_cast<double>(path.times().size());
    sum += n;
    sum_sq += n * n;
  }
  const double mean = sum / reps;
  const double var = sum_sq / reps - mean * mean;
  const double expected = rate * layout.period * layout.days;
  CHECK(std::abs(mean - expected) <= 4.0 * std::sqrt(expected / reps));
  CHECK(var == doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("expected count matches the intensity integral") {
  // E[count] = n * int lam over 200 replications, within 3 standard errors.
  Rng rng(63);
  const DataLayout layout{1.0, 1, 2};
  const auto lam = [](double t) { return 4.0 + 3.0 * std::sin(2.0 * std::numbers::pi * t); };
  const long reps = 200;
  double sum = 0.0, sum_sq = 0.0;
  for (long r = 0; r < reps; ++r) {
    const double n = static_cast<double>(
        simulate_path(lam, 7.0, layout, rng).times().size());
    sum += n;
    sum_sq += n * n;
  }
  const double mean = sum / reps;
  const double sd = std::sqrt((sum_sq / reps - mean * mean) / reps);
  CHECK(std::abs(mean - 8.0) <= 3.0 * sd);
}

TEST_CASE("bound violation is a hard error") {
  Rng rng(64);
  CHECK_THROWS_AS(
      simulate_path([](double) { return 2.0; }, 1.0, DataLayout{10.0, 1, 5}, rng),
      std::runtime_error);
}

TEST_CASE("events are sorted and within the horizon") {
  Rng rng(65);
  const DataLayout layout{24.0, 4, 7};
  const EventPath path =
      simulate_path([](double t) { return 1.0 + t / 24.0; }, 2.0, layout, rng);
  double prev = 0.0;
  for (double t : path.times()) {
    CHECK(t >= prev);
    CHECK(t <= 24.0 * 7);
    prev = t;
  }
}

TEST_CASE("determinism given the seed") {
  const DataLayout layout{24.0, 4, 2};
  Rng a(66), b(66), c(67);
  const auto lam = [](double t) { return 2.0 + std::cos(t); };
  const EventPath pa = simulate_path(lam, 3.0, layout, a);
  const EventPath pb = simulate_path(lam, 3.0, layout, b);
  const EventPath pc = simulate_path(lam, 3.0, layout, c);
  CHECK(pa.times() == pb.times());
  CHECK(pa.times() != pc.times());
}

TEST_CASE("binned simulation is Poisson per bin (dispersion index)") {
  Rng rng(68);
  const DataLayout layout{1.0, 4, 1};
  const auto lam = [](double t) { return 6.0 + 4.0 * t; };
  const long reps = 10000;
  std::vector<double> sum(4, 0.0), sum_sq(4, 0.0);
  for (long r = 0; r < reps; ++r) {
    const BinnedCounts bc = bin_events(simulate_path(lam, 10.0, layout, rng));
    for (int j = 0; j < 4; ++j) {
      const double c = static_cast<double>(bc.at(0, j));
      sum[static_cast<std::size_t>(j)] += c;
      sum_sq[static_cast<std::size_t>(j)] += c * c;
    }
  }
  for (int j = 0; j < 4; ++j) {
    const double mean = sum[static_cast<std::size_t>(j)] / reps;
    const double var = sum_sq[static_cast<std::size_t>(j)] / reps - mean * mean;
    CHECK(var / mean > 0.8);
    CHECK(var / mean < 1.2);
  }
}

TEST_CASE("moment check: constant counting statistic") {
  // f = 1, lam = c: mean and variance both c*T.
  Rng rng(69);
  const MomentReport report = moment_check(
      [](double) { return 3.0; }, 3.0, [](double) { return 1.0; },
      DataLayout{1.0, 1, 1}, 4000, rng);
  CHECK(report.mean_exact == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(report.var_exact == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(report.z_mean) <= 4.0);
  CHECK(std::abs(report.z_var) <= 4.0);
}

TEST_CASE("moment check: linear statistic under the unit intensity") {
  // f(t) = t, lam = 1, T = 1: mean 1/2, variance 1/3.
  Rng rng(70);
  const MomentReport report = moment_check(
      [](double) { return 1.0; }, 1.0, [](double t) { return t; },
      DataLayout{1.0, 1, 1}, 4000, rng);
  CHECK(report.mean_exact == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.var_exact == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(report.z_mean) <= 4.0);
  CHECK(std::abs(report.z_var) <= 4.0);
}

}  // TEST_SUITE
