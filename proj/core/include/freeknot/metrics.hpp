#pragma once

// Statistical distances between intensity functions: the closed Poisson
// forms of the Hellinger distance, Kullback-Leibler divergence and its
// variance companion, the binned root-intensity distance, and the L2 / sup
// norms. Integrands involve square roots and logarithms, so these are
// computed by Gauss-Legendre quadrature subdivided at the union of both
// intensities' breakpoints.

#include <functional>
#include <vector>

#include "freeknot/data.hpp"
#include "freeknot/prior.hpp"

namespace freeknot {

// An evaluable intensity on [0, T] with its interior smoothness
// breakpoints (knots, for splines) to guide the quadrature.
struct Intensity {
  std::function<double(double)> f;
  double period = 0.0;
  std::vector<double> breaks;
};

Intensity make_intensity(const SplineState& state);
Intensity constant_intensity(double c, double period);
// a + b sin(2 pi t / T)
Intensity sine_intensity(double a, double b, double period);

// 2 (1 - exp(-1/2 int (sqrt lam - sqrt lam')^2)); in [0, 2]. Raises on a
// negative intensity value.
double hellinger_sq(const Intensity& lam, const Intensity& lam_p);

// int (lam - truth) + int truth log(truth / lam); nonnegative. Returns
// +infinity when lam vanishes where the truth is positive.
double kl(const Intensity& lam, const Intensity& truth);

// int truth log^2(truth / lam).
double variance_v(const Intensity& lam, const Intensity& truth);

// Root of sum over bins of squared differences of square-rooted bin
// integrals: zero whenever the bin integrals agree.
double rho(const Intensity& lam, const Intensity& lam_p, const DataLayout& layout);

// || sqrt lam - sqrt lam' ||_2
double sqrt_l2(const Intensity& lam, const Intensity& lam_p);

// || lam - lam' ||_2
double l2(const Intensity& lam, const Intensity& lam_p);

// sup | lam - lam' | over a dense grid plus both break sets.
double sup_dist(const Intensity& lam, const Intensity& lam_p);

// The three distance inequalities tying Hellinger, KL and the variance
// term to the root-intensity L2 distance, each checked with the given
// slack for quadrature error:
//   (1/sqrt2)(d ∧ 1) <= h <= sqrt2 (d ∧ 1),
//   K <= 3 d^2 + V,
//   d^2 <= 1/4 int (lam ∨ lam') log^2(lam / lam'),
// with d = || sqrt lam - sqrt lam' ||_2.
struct DistanceBoundsReport {
  bool hellinger_sandwich = false;
  bool kl_dominated = false;
  bool sqrt_l2_dominated = false;
  bool all() const { return hellinger_sandwich && kl_dominated && sqrt_l2_dominated; }
};

DistanceBoundsReport check_distance_bounds(const Intensity& lam, const Intensity& lam_p,
                                           double slack = 1e-8);

}  // namespace freeknot
