#pragma once

#include <vector>

#include "freeknot/data.hpp"
#include "freeknot/prior.hpp"

namespace freeknot {

// Per-bin integrated intensities: values[j] = int over bin j of the spline.
struct BinIntensities {
  std::vector<double> values;
  DataLayout layout;
};

// Exact bin integrals of the state's spline (antiderivative differences,
// so the values telescope: their sum equals the integral over [0, T]).
BinIntensities bin_intensities(const SplineState& state, const DataLayout& layout);

// Log of the binned-count likelihood,
//   sum_j [ S_j log lam_j - n lam_j ] - sum_ij log C_ij!,
// including the additive factorial constant. Returns -infinity when any
// bin intensity is nonpositive, so rejection happens through the ratio.
double loglik_binned(const SplineState& state, const BinnedCounts& bc);

// Log likelihood of a full event path relative to a unit-rate process:
//   -n (int_0^T lam - T) + sum_events log lam(t mod T).
// Returns -infinity if the intensity is nonpositive at an event time.
double loglik_full(const SplineState& state, const EventPath& ep);

}  // namespace freeknot
