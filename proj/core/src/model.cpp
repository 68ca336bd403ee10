#include "freeknot/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace freeknot {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

BinIntensities bin_intensities(const SplineState& state, const DataLayout& layout) {
  layout.validate();
  if (layout.period != state.period()) {
    throw std::invalid_argument("bin_intensities: layout period does not match the state");
  }
  const SplineIntegral F(state.knots(), state.theta());
  const int m = layout.bins;
  BinIntensities result;
  result.layout = layout;
  result.values.resize(static_cast<std::size_t>(m));
  double prev = F(0.0);
  for (int j = 1; j <= m; ++j) {
    const double edge = j == m ? layout.period : j * layout.bin_width();
    const double cur = F(edge);
    result.values[static_cast<std::size_t>(j - 1)] = cur - prev;
    prev = cur;
  }
  return result;
}

double loglik_binned(const SplineState& state, const BinnedCounts& bc) {
  const BinIntensities lam = bin_intensities(state, bc.layout());
  const int m = bc.layout().bins;
  const double n = bc.layout().days;
  double ll = -bc.log_factorial_sum();
  for (int j = 0; j < m; ++j) {
    const double lj = lam.values[static_cast<std::size_t>(j)];
    if (!(lj > 0.0)) return kNegInf;
    const double sj = static_cast<double>(bc.col_sums()[static_cast<std::size_t>(j)]);
    ll += sj * std::log(lj) - n * lj;
  }
  return ll;
}

double loglik_full(const SplineState& state, const EventPath& ep) {
  const DataLayout& layout = ep.layout();
  if (layout.period != state.period()) {
    throw std::invalid_argument("loglik_full: layout period does not match the state");
  }
  const double T = layout.period;
  const double total = integrate_spline(state.knots(), state.theta(), 0.0, T);
  double ll = -static_cast<double>(layout.days) * (total - T);
  for (double t : ep.times()) {
    // Days are right-closed: an exact multiple of T maps to local time T.
    double local = std::fmod(t, T);
    if (local == 0.0 && t > 0.0) local = T;
    const double v = state.eval(local);
    if (!(v > 0.0)) return kNegInf;
    ll += std::log(v);
  }
  return ll;
}

}  // namespace freeknot
