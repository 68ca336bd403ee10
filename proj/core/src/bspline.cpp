#include "freeknot/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "freeknot/quadrature.hpp"

namespace freeknot {

KnotSet::KnotSet(int order, double period, std::vector<double> inner)
    : order_(order), period_(period), inner_(std::move(inner)) {
  if (order_ < 2) throw std::invalid_argument("KnotSet: order must be >= 2");
  if (!(period_ > 0.0)) throw std::invalid_argument("KnotSet: period must be positive");
  double prev = 0.0;
  for (std::size_t i = 0; i < inner_.size(); ++i) {
    if (!(inner_[i] > prev)) {
      throw std::invalid_argument("KnotSet: inner knot " + std::to_string(i) +
                                  " is not strictly increasing inside (0, T)");
    }
    prev = inner_[i];
  }
  if (!inner_.empty() && !(inner_.back() < period_)) {
    throw std::invalid_argument("KnotSet: inner knot " +
                                std::to_string(inner_.size() - 1) +
                                " is not below the period");
  }
  full_.reserve(inner_.size() + 2 * static_cast<std::size_t>(order_));
  full_.insert(full_.end(), static_cast<std::size_t>(order_), 0.0);
  full_.insert(full_.end(), inner_.begin(), inner_.end());
  full_.insert(full_.end(), static_cast<std::size_t>(order_), period_);
}

int KnotSet::span(double t) const {
  if (!(t >= 0.0) || !(t <= period_)) {
    throw std::domain_error("KnotSet::span: t outside [0, T]");
  }
  const int j = dimension();
  if (t >= period_) return j - 1;
  // Spans live at indices order-1 .. j-1 of the full vector.
  const auto it = std::upper_bound(full_.begin(), full_.end(), t);
  int k = static_cast<int>(it - full_.begin()) - 1;
  return std::clamp(k, order_ - 1, j - 1);
}

void eval_basis_local(const KnotSet& ks, double t, int& first_index, double* out) {
  const int q = ks.order();
  const int k = ks.span(t);
  const std::vector<double>& u = ks.full();
  first_index = k - q + 1;

  // Cox-de Boor triangle for the q nonzero values on span k.
  double left[64], right[64];
  out[0] = 1.0;
  for (int d = 1; d < q; ++d) {
    left[d] = t - u[static_cast<std::size_t>(k + 1 - d)];
    right[d] = u[static_cast<std::size_t>(k + d)] - t;
    double saved = 0.0;
    for (int r = 0; r < d; ++r) {
      const double temp = out[r] / (right[r + 1] + left[d - r]);
      out[r] = saved + right[r + 1] * temp;
      saved = left[d - r] * temp;
    }
    out[d] = saved;
  }
}

BasisValues eval_basis(const KnotSet& ks, double t) {
  const int q = ks.order();
  if (q > 63) throw std::invalid_argument("eval_basis: order too large");
  BasisValues result;
  result.at = t;
  result.values.assign(static_cast<std::size_t>(ks.dimension()), 0.0);
  int first = 0;
  double local[64];
  eval_basis_local(ks, t, first, local);
  for (int r = 0; r < q; ++r) {
    result.values[static_cast<std::size_t>(first + r)] = local[r];
  }
  return result;
}

double eval_spline(const KnotSet& ks, std::span<const double> theta, double t) {
  const int q = ks.order();
  if (static_cast<int>(theta.size()) != ks.dimension()) {
    throw std::invalid_argument("eval_spline: coefficient count does not match dimension");
  }
  int first = 0;
  double local[64];
  eval_basis_local(ks, t, first, local);
  double value = 0.0;
  for (int r = 0; r < q; ++r) {
    value += theta[static_cast<std::size_t>(first + r)] * local[r];
  }
  return value;
}

SplineIntegral::SplineIntegral(const KnotSet& ks, std::span<const double> theta)
    : lifted_(ks.order() + 1, ks.period(), ks.inner()) {
  const int q = ks.order();
  const int j = ks.dimension();
  if (static_cast<int>(theta.size()) != j) {
    throw std::invalid_argument("SplineIntegral: coefficient count does not match dimension");
  }
  const std::vector<double>& u = ks.full();
  // F' = s fixes the lifted coefficients up to F(0) = 0:
  //   c[0] = 0, c[i+1] = c[i] + theta[i] * (u[i+q] - u[i]) / q.
  coef_.assign(static_cast<std::size_t>(j) + 1, 0.0);
  for (int i = 0; i < j; ++i) {
    coef_[static_cast<std::size_t>(i) + 1] =
        coef_[static_cast<std::size_t>(i)] +
        theta[static_cast<std::size_t>(i)] *
            (u[static_cast<std::size_t>(i + q)] - u[static_cast<std::size_t>(i)]) / q;
  }
}

double SplineIntegral::operator()(double x) const {
  return eval_spline(lifted_, coef_, x);
}

double integrate_spline(const KnotSet& ks, std::span<const double> theta,
                        double a, double b) {
  if (!(a >= 0.0) || !(b <= ks.period()) || a > b) {
    throw std::domain_error("integrate_spline: need 0 <= a <= b <= T");
  }
  const SplineIntegral F(ks, theta);
  return F(b) - F(a);
}

std::vector<double> basis_inner_products(const KnotSet& ks, int m) {
  const int q = ks.order();
  const int j = ks.dimension();
  if (m < 0 || m >= j) {
    throw std::out_of_range("basis_inner_products: basis index out of range");
  }
  if (q > 63) throw std::invalid_argument("basis_inner_products: order too large");

  // q-point Gauss-Legendre per knot span is exact for the degree-2(q-1)
  // product of two basis functions.
  const GaussLegendre rule = gauss_legendre(q);
  const std::vector<double>& u = ks.full();
  std::vector<double> overlap(static_cast<std::size_t>(j), 0.0);

  // Supp(B_m) = [u_m, u_{m+q}]; spans with index k in [m, m+q-1].
  const int k_lo = std::max(m, q - 1);
  const int k_hi = std::min(m + q - 1, j - 1);
  for (int k = k_lo; k <= k_hi; ++k) {
    const double lo = u[static_cast<std::size_t>(k)];
    const double hi = u[static_cast<std::size_t>(k + 1)];
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double scale = 0.5 * (hi - lo);
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
      const double t = mid + scale * rule.nodes[g];
      int first = 0;
      double local[64];
      eval_basis_local(ks, t, first, local);
      const int m_local = m - first;
      if (m_local < 0 || m_local >= q) continue;
      const double w = scale * rule.weights[g] * local[m_local];
      for (int r = 0; r < q; ++r) {
        overlap[static_cast<std::size_t>(first + r)] += w * local[r];
      }
    }
  }

  double total = 0.0;
  for (double v : overlap) total += v;
  for (double& v : overlap) v /= total;
  return overlap;
}

}  // namespace freeknot
