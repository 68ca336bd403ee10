#pragma once

#include <functional>

#include "freeknot/data.hpp"

namespace freeknot {

class Rng;

// Simulates an inhomogeneous Poisson path on [0, n*T] by thinning a
// homogeneous Poisson(bound) stream of candidates: each candidate at time t
// is kept with probability intensity(t mod T) / bound. Exact for any
// intensity dominated by the bound; a candidate where the intensity exceeds
// the bound raises, since the law would be wrong.
EventPath simulate_path(const std::function<double(double)>& intensity,
                        double bound, const DataLayout& layout, Rng& rng);

// Monte Carlo check of the first two moments of int f dN against the
// identities E int f dN = int f*lam and Var int f dN = int f^2*lam
// (per period, scaled by the number of periods).
struct MomentReport {
  double mean_mc = 0.0;
  double mean_exact = 0.0;
  double var_mc = 0.0;
  double var_exact = 0.0;
  double z_mean = 0.0;
  double z_var = 0.0;
  long replications = 0;
};

MomentReport moment_check(const std::function<double(double)>& intensity,
                          double bound, const std::function<double(double)>& f,
                          const DataLayout& layout, long replications, Rng& rng);

}  // namespace freeknot
