#include "freeknot/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace freeknot {

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::exponential(double rate) {
  if (rate <= 0.0) throw std::invalid_argument("exponential: rate must be positive");
  return -std::log(1.0 - uniform()) / rate;
}

long Rng::poisson(double mean) {
  if (mean < 0.0) throw std::invalid_argument("poisson: mean must be nonnegative");
  long count = 0;
  // Multiplication method is exact but needs exp(-mean) representable;
  // larger means are drawn as independent chunks.
  while (mean > 30.0) {
    double chunk_threshold = std::exp(-30.0);
    double prod = uniform();
    while (prod > chunk_threshold) {
      ++count;
      prod *= uniform();
    }
    mean -= 30.0;
  }
  const double threshold = std::exp(-mean);
  double prod = uniform();
  while (prod > threshold) {
    ++count;
    prod *= uniform();
  }
  return count;
}

std::vector<long> Rng::sample_without_replacement(long n, long k) {
  if (k < 0 || k > n) throw std::invalid_argument("sample_without_replacement: need 0 <= k <= n");
  std::vector<long> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  for (long i = n - k; i < n; ++i) {
    const long r = static_cast<long>(uniform_int(static_cast<std::uint64_t>(i) + 1));
    if (std::find(chosen.begin(), chosen.end(), r) != chosen.end()) {
      chosen.push_back(i);
    } else {
      chosen.push_back(r);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace freeknot
