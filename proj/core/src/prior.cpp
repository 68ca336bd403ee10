#include "freeknot/prior.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "freeknot/rng.hpp"

namespace freeknot {

namespace {

std::vector<double> knot_positions(int /*order*/, double period,
                                   const std::vector<long>& grid_idx, long grid) {
  std::vector<double> pos;
  pos.reserve(grid_idx.size());
  for (long idx : grid_idx) {
    pos.push_back(static_cast<double>(idx) * period / (static_cast<double>(grid) + 1.0));
  }
  return pos;
}

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

void PriorConfig::validate() const {
  if (order < 2) throw std::invalid_argument("PriorConfig: order must be >= 2");
  if (!(mean_dim > order)) throw std::invalid_argument("PriorConfig: mean_dim must exceed the order");
  if (lower < 0.0 || !(upper > lower)) {
    throw std::invalid_argument("PriorConfig: need 0 <= M1 < M2");
  }
  if (!(period > 0.0)) throw std::invalid_argument("PriorConfig: period must be positive");
}

long grid_size(long j) { return j * j; }

SplineState::SplineState(int order, double period, std::vector<long> grid_idx,
                         std::vector<double> theta)
    : order_(order),
      period_(period),
      grid_idx_(std::move(grid_idx)),
      theta_(std::move(theta)),
      knots_(order, period,
             knot_positions(order, period, grid_idx_,
                            grid_size(static_cast<long>(theta_.size())))) {
  const long j = static_cast<long>(theta_.size());
  if (j < order_) throw std::invalid_argument("SplineState: dimension below the order");
  if (static_cast<long>(grid_idx_.size()) != j - order_) {
    throw std::invalid_argument("SplineState: knot count must equal dim - order");
  }
  const long G = grid_size(j);
  long prev = 0;
  for (std::size_t i = 0; i < grid_idx_.size(); ++i) {
    if (grid_idx_[i] <= prev || grid_idx_[i] > G) {
      throw std::invalid_argument("SplineState: grid index " + std::to_string(i) +
                                  " not strictly increasing within [1, G]");
    }
    prev = grid_idx_[i];
  }
}

bool state_in_support(const SplineState& state, const PriorConfig& cfg) {
  if (state.order() != cfg.order || state.period() != cfg.period) return false;
  for (double v : state.theta()) {
    if (v < cfg.lower || v > cfg.upper) return false;
  }
  return true;
}

SplineState sample_prior(const PriorConfig& cfg, Rng& rng) {
  cfg.validate();
  const long j = cfg.order + rng.poisson(cfg.mean_dim - cfg.order);
  const long G = grid_size(j);
  std::vector<long> idx = rng.sample_without_replacement(G, j - cfg.order);
  for (long& v : idx) ++v;  // grid indices are 1-based
  std::vector<double> theta(static_cast<std::size_t>(j));
  for (double& v : theta) v = rng.uniform(cfg.lower, cfg.upper);
  return SplineState(cfg.order, cfg.period, std::move(idx), std::move(theta));
}

double log_prior(const SplineState& state, const PriorConfig& cfg) {
  if (!state_in_support(state, cfg)) {
    return -std::numeric_limits<double>::infinity();
  }
  const long j = state.dim();
  const double shift_mean = cfg.mean_dim - cfg.order;
  const long excess = j - cfg.order;
  double lp = -shift_mean - std::lgamma(static_cast<double>(excess) + 1.0);
  if (excess > 0) lp += excess * std::log(shift_mean);
  lp -= log_choose(static_cast<double>(grid_size(j)), static_cast<double>(excess));
  lp -= j * std::log(cfg.upper - cfg.lower);
  return lp;
}

}  // namespace freeknot
