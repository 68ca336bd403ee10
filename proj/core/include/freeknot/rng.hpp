#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace freeknot {

// Seeded random stream. Every variate transformation is implemented on top
// of raw mt19937_64 output, so a given seed reproduces the same sequence on
// any platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Exactly uniform integer in [0, n); rejection removes the modulo bias.
  std::uint64_t uniform_int(std::uint64_t n);

  // Standard normal via Box-Muller (two raw draws per variate, no caching).
  double normal();

  double normal(double mean, double sd) { return mean + sd * normal(); }

  double exponential(double rate);

  long poisson(double mean);

  // k distinct values from {0, ..., n-1}, ascending (Floyd's sampling).
  std::vector<long> sample_without_replacement(long n, long k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace freeknot
