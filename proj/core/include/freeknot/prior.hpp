#pragma once

#include <vector>

#include "freeknot/bspline.hpp"

namespace freeknot {

class Rng;

// Hyperparameters of the free-knot spline prior: spline order q, mean
// dimension mu of the shifted Poisson law on the number of basis
// functions, coefficient bounds [M1, M2], and the period T.
struct PriorConfig {
  int order = 4;          // q >= 2
  double mean_dim = 10.0; // mu > q
  double lower = 0.0;     // M1 >= 0
  double upper = 1.0;     // M2 > M1
  double period = 1.0;    // T > 0
  void validate() const;
};

// Number of candidate interior knot positions at dimension j. The grid for
// dimension j has j*j equally spaced interior points i*T/(j*j+1), so knot
// equality is exact integer equality and collisions cannot occur when
// sampling without replacement.
long grid_size(long j);

// One point of the sampler's state space: dimension j, the interior knots
// as strictly increasing indices into the dimension-j grid, and the j
// B-spline coefficients. The knot set is derived and cached.
class SplineState {
 public:
  SplineState(int order, double period, std::vector<long> grid_idx,
              std::vector<double> theta);

  int order() const { return order_; }
  double period() const { return period_; }
  int dim() const { return static_cast<int>(theta_.size()); }
  long grid() const { return grid_size(dim()); }
  const std::vector<long>& grid_idx() const { return grid_idx_; }
  const std::vector<double>& theta() const { return theta_; }
  const KnotSet& knots() const { return knots_; }

  // Real-valued position of a grid index on this state's grid.
  double knot_position(long idx) const {
    return static_cast<double>(idx) * period_ / (static_cast<double>(grid()) + 1.0);
  }

  double eval(double t) const { return eval_spline(knots_, theta_, t); }

 private:
  int order_;
  double period_;
  std::vector<long> grid_idx_;
  std::vector<double> theta_;
  KnotSet knots_;
};

bool state_in_support(const SplineState& state, const PriorConfig& cfg);

// Draws J = q + Poisson(mu - q), then j - q grid indices uniformly without
// replacement, then j coefficients i.i.d. uniform on [M1, M2].
SplineState sample_prior(const PriorConfig& cfg, Rng& rng);

// Log prior density: log P(J = j) - log C(G(j), j-q) - j log(M2 - M1),
// or -infinity when any coefficient is out of bounds.
double log_prior(const SplineState& state, const PriorConfig& cfg);

}  // namespace freeknot
