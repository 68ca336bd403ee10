#pragma once

// B-spline kernel on [0, T]: clamped knot vectors, Cox-de Boor basis
// evaluation, closed-form integration through the antiderivative spline,
// and normalized basis inner products.

#include <span>
#include <vector>

namespace freeknot {

// Clamped knot set of order q on [0, T]. The boundary knots 0 and T are
// repeated q times; with j - q interior knots the spline space has
// dimension j. Interior knots must be simple (strictly increasing).
class KnotSet {
 public:
  KnotSet(int order, double period, std::vector<double> inner);

  int order() const { return order_; }
  double period() const { return period_; }
  int dimension() const { return static_cast<int>(inner_.size()) + order_; }
  const std::vector<double>& inner() const { return inner_; }
  const std::vector<double>& full() const { return full_; }

  // Index k of the knot span containing t: full()[k] <= t < full()[k+1],
  // with t == T mapped into the last nonempty span so evaluation is
  // defined on the closed interval. Throws std::domain_error off [0, T].
  int span(double t) const;

 private:
  int order_;
  double period_;
  std::vector<double> inner_;
  std::vector<double> full_;
};

struct BasisValues {
  std::vector<double> values;  // one entry per basis function
  double at = 0.0;
};

// All basis values at t. Nonnegative, sum to 1, and at most `order` of them
// (contiguous) are nonzero.
BasisValues eval_basis(const KnotSet& ks, double t);

// The `order` possibly-nonzero basis values at t, written to out[0..order).
// first_index receives the index of the first of them.
void eval_basis_local(const KnotSet& ks, double t, int& first_index, double* out);

double eval_spline(const KnotSet& ks, std::span<const double> theta, double t);

// Running integral F(x) = int_0^x s(t) dt of the spline with the given
// coefficients: an order q+1 spline over the same interior knots, with
// coefficients accumulated from theta. Build once, evaluate many times.
class SplineIntegral {
 public:
  SplineIntegral(const KnotSet& ks, std::span<const double> theta);
  double operator()(double x) const;

 private:
  KnotSet lifted_;
  std::vector<double> coef_;
};

// Exact integral of the spline over [a, b] (no quadrature error beyond
// rounding). Requires 0 <= a <= b <= T.
double integrate_spline(const KnotSet& ks, std::span<const double> theta,
                        double a, double b);

// Normalized overlaps w_i = int B_m B_i / int B_m for i = 0..j-1.
// Nonnegative, sum to 1, and zero whenever the supports of B_m and B_i
// are disjoint (|i - m| >= order).
std::vector<double> basis_inner_products(const KnotSet& ks, int m);

}  // namespace freeknot
