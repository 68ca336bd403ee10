#include "stat_tests.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace freeknot::test {

namespace {

// Lower regularized incomplete gamma by series (x < a + 1).
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by continued fraction (x >= a + 1).
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double ks_sf(double t) {
  // Q_KS(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2)
  if (t < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_sf(double stat, int dof) {
  return gamma_q(0.5 * dof, 0.5 * stat);
}

ChiSquare chi_square_gof(const std::map<long, long>& observed, long n,
                         const std::function<double(long)>& pmf,
                         long support_min, long support_max,
                         double min_expected) {
  // Expected counts per value, with the upper tail folded into the last value.
  std::vector<double> expected;
  std::vector<long> counts;
  double tail = 1.0;
  for (long v = support_min; v <= support_max; ++v) {
    const double p = pmf(v);
    tail -= p;
    expected.push_back(p * static_cast<double>(n));
    const auto it = observed.find(v);
    counts.push_back(it == observed.end() ? 0 : it->second);
  }
  expected.back() += std::max(tail, 0.0) * static_cast<double>(n);
  for (const auto& [value, count] : observed) {
    if (value > support_max) counts.back() += count;
    if (value < support_min) {
      throw std::invalid_argument("chi_square_gof: observation below the support");
    }
  }

  // Pool cells until each expected count reaches the threshold.
  std::vector<double> pooled_e;
  std::vector<long> pooled_o;
  double acc_e = 0.0;
  long acc_o = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    acc_e += expected[i];
    acc_o += counts[i];
    if (acc_e >= min_expected) {
      pooled_e.push_back(acc_e);
      pooled_o.push_back(acc_o);
      acc_e = 0.0;
      acc_o = 0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0) {
    if (pooled_e.empty()) {
      pooled_e.push_back(acc_e);
      pooled_o.push_back(acc_o);
    } else {
      pooled_e.back() += acc_e;
      pooled_o.back() += acc_o;
    }
  }
  if (pooled_e.size() < 2) throw std::invalid_argument("chi_square_gof: too few cells");

  ChiSquare result;
  for (std::size_t i = 0; i < pooled_e.size(); ++i) {
    const double diff = static_cast<double>(pooled_o[i]) - pooled_e[i];
    result.stat += diff * diff / pooled_e[i];
  }
  result.dof = static_cast<int>(pooled_e.size()) - 1;
  result.p = chi_square_sf(result.stat, result.dof);
  return result;
}

double ks_uniform_pvalue(std::vector<double> samples, double a, double b) {
  if (samples.size() < 5) throw std::invalid_argument("ks_uniform_pvalue: too few samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = (samples[i] - a) / (b - a);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  const double scaled = d * (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n));
  return ks_sf(scaled);
}

}  // namespace freeknot::test
