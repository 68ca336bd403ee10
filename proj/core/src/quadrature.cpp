#include "freeknot/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace freeknot {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  // Roots of P_n by Newton iteration; symmetric, so only half are computed.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    const GaussLegendre& rule, int panels) {
  if (panels < 1) throw std::invalid_argument("gl_integrate: need panels >= 1");
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    const double scale = 0.5 * width;
    double piece = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      piece += rule.weights[i] * f(mid + scale * rule.nodes[i]);
    }
    total += scale * piece;
  }
  return total;
}

double gl_integrate_breaks(const std::function<double(double)>& f,
                           const std::vector<double>& breaks,
                           const GaussLegendre& rule, int panels_per_piece) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) {
      total += gl_integrate(f, breaks[i], breaks[i + 1], rule, panels_per_piece);
    }
  }
  return total;
}

}  // namespace freeknot
