#include "freeknot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "freeknot/quadrature.hpp"

namespace freeknot {

namespace {

constexpr double kPosInf = std::numeric_limits<double>::infinity();

std::vector<double> merged_breaks(const Intensity& a, const Intensity& b) {
  std::vector<double> breaks;
  breaks.push_back(0.0);
  breaks.insert(breaks.end(), a.breaks.begin(), a.breaks.end());
  breaks.insert(breaks.end(), b.breaks.begin(), b.breaks.end());
  breaks.push_back(a.period);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

void require_same_period(const Intensity& a, const Intensity& b) {
  if (a.period != b.period) {
    throw std::invalid_argument("metrics: intensities have different periods");
  }
}

// Shared quadrature scheme: 24 nodes, 8 panels per smooth piece.
double integrate_pair(const Intensity& a, const Intensity& b,
                      const std::function<double(double, double)>& integrand) {
  static const GaussLegendre rule = gauss_legendre(24);
  const std::vector<double> breaks = merged_breaks(a, b);
  return gl_integrate_breaks(
      [&](double t) { return integrand(a.f(t), b.f(t)); }, breaks, rule, 8);
}

}  // namespace

Intensity make_intensity(const SplineState& state) {
  Intensity out;
  out.period = state.period();
  out.breaks = state.knots().inner();
  out.f = [state](double t) { return state.eval(t); };
  return out;
}

Intensity constant_intensity(double c, double period) {
  return Intensity{[c](double) { return c; }, period, {}};
}

Intensity sine_intensity(double a, double b, double period) {
  return Intensity{
      [a, b, period](double t) {
        return a + b * std::sin(2.0 * std::numbers::pi * t / period);
      },
      period,
      {}};
}

double hellinger_sq(const Intensity& lam, const Intensity& lam_p) {
  require_same_period(lam, lam_p);
  const double integral = integrate_pair(lam, lam_p, [](double x, double y) {
    if (x < 0.0 || y < 0.0) {
      throw std::domain_error("hellinger_sq: negative intensity value");
    }
    const double d = std::sqrt(x) - std::sqrt(y);
    return d * d;
  });
  return 2.0 * (1.0 - std::exp(-0.5 * integral));
}

double kl(const Intensity& lam, const Intensity& truth) {
  require_same_period(lam, truth);
  bool vanishing = false;
  const double value = integrate_pair(lam, truth, [&](double x, double y) {
    if (y > 0.0 && !(x > 0.0)) {
      vanishing = true;
      return 0.0;
    }
    const double log_term = y > 0.0 ? y * std::log(y / x) : 0.0;
    return (x - y) + log_term;
  });
  return vanishing ? kPosInf : value;
}

double variance_v(const Intensity& lam, const Intensity& truth) {
  require_same_period(lam, truth);
  bool vanishing = false;
  const double value = integrate_pair(lam, truth, [&](double x, double y) {
    if (y > 0.0 && !(x > 0.0)) {
      vanishing = true;
      return 0.0;
    }
    if (y <= 0.0) return 0.0;
    const double lr = std::log(y / x);
    return y * lr * lr;
  });
  return vanishing ? kPosInf : value;
}

double rho(const Intensity& lam, const Intensity& lam_p, const DataLayout& layout) {
  require_same_period(lam, lam_p);
  layout.validate();
  if (layout.period != lam.period) {
    throw std::invalid_argument("rho: layout period does not match the intensities");
  }
  static const GaussLegendre rule = gauss_legendre(24);
  double total = 0.0;
  for (int j = 0; j < layout.bins; ++j) {
    const double lo = j * layout.bin_width();
    const double hi = j == layout.bins - 1 ? layout.period : (j + 1) * layout.bin_width();
    std::vector<double> breaks{lo};
    for (double b : lam.breaks) {
      if (b > lo && b < hi) breaks.push_back(b);
    }
    for (double b : lam_p.breaks) {
      if (b > lo && b < hi) breaks.push_back(b);
    }
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const double bin_a = gl_integrate_breaks(lam.f, breaks, rule, 4);
    const double bin_b = gl_integrate_breaks(lam_p.f, breaks, rule, 4);
    const double d = std::sqrt(std::max(bin_a, 0.0)) - std::sqrt(std::max(bin_b, 0.0));
    total += d * d;
  }
  return std::sqrt(total);
}

double sqrt_l2(const Intensity& lam, const Intensity& lam_p) {
  require_same_period(lam, lam_p);
  const double integral = integrate_pair(lam, lam_p, [](double x, double y) {
    const double d = std::sqrt(std::max(x, 0.0)) - std::sqrt(std::max(y, 0.0));
    return d * d;
  });
  return std::sqrt(std::max(integral, 0.0));
}

double l2(const Intensity& lam, const Intensity& lam_p) {
  require_same_period(lam, lam_p);
  const double integral = integrate_pair(lam, lam_p, [](double x, double y) {
    return (x - y) * (x - y);
  });
  return std::sqrt(std::max(integral, 0.0));
}

double sup_dist(const Intensity& lam, const Intensity& lam_p) {
  require_same_period(lam, lam_p);
  const int kGrid = 4096;
  double sup = 0.0;
  for (int g = 0; g <= kGrid; ++g) {
    const double t = lam.period * static_cast<double>(g) / kGrid;
    sup = std::max(sup, std::abs(lam.f(t) - lam_p.f(t)));
  }
  for (double t : lam.breaks) sup = std::max(sup, std::abs(lam.f(t) - lam_p.f(t)));
  for (double t : lam_p.breaks) sup = std::max(sup, std::abs(lam.f(t) - lam_p.f(t)));
  return sup;
}

DistanceBoundsReport check_distance_bounds(const Intensity& lam, const Intensity& lam_p,
                                           double slack) {
  DistanceBoundsReport report;
  const double d = sqrt_l2(lam, lam_p);
  const double h = std::sqrt(hellinger_sq(lam, lam_p));
  const double capped = std::min(d, 1.0);
  report.hellinger_sandwich =
      capped / std::numbers::sqrt2 <= h + slack && h <= std::numbers::sqrt2 * capped + slack;

  const double K = kl(lam, lam_p);
  const double V = variance_v(lam, lam_p);
  report.kl_dominated = K <= 3.0 * d * d + V + slack;

  const double envelope = integrate_pair(lam, lam_p, [](double x, double y) {
    const double lr = std::log(x / y);
    return std::max(x, y) * lr * lr;
  });
  report.sqrt_l2_dominated = d * d <= 0.25 * envelope + slack;
  return report;
}

}  // namespace freeknot
