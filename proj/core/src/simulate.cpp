#include "freeknot/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "freeknot/quadrature.hpp"
#include "freeknot/rng.hpp"

namespace freeknot {

EventPath simulate_path(const std::function<double(double)>& intensity,
                        double bound, const DataLayout& layout, Rng& rng) {
  layout.validate();
  if (!(bound > 0.0)) throw std::invalid_argument("simulate_path: bound must be positive");
  const double horizon = layout.period * layout.days;
  std::vector<double> times;
  double t = rng.exponential(bound);
  while (t <= horizon) {
    const double lam = intensity(std::fmod(t, layout.period));
    if (lam > bound) {
      throw std::runtime_error("simulate_path: intensity exceeds the bound at t = " +
                               std::to_string(t));
    }
    if (rng.uniform() < lam / bound) times.push_back(t);
    t += rng.exponential(bound);
  }
  return EventPath(layout, std::move(times));
}

MomentReport moment_check(const std::function<double(double)>& intensity,
                          double bound, const std::function<double(double)>& f,
                          const DataLayout& layout, long replications, Rng& rng) {
  if (replications < 2) throw std::invalid_argument("moment_check: need at least 2 replications");
  MomentReport report;
  report.replications = replications;

  const GaussLegendre rule = gauss_legendre(16);
  const double per_period_mean = gl_integrate(
      [&](double t) { return f(t) * intensity(t); }, 0.0, layout.period, rule, 64);
  const double per_period_var = gl_integrate(
      [&](double t) { return f(t) * f(t) * intensity(t); }, 0.0, layout.period, rule, 64);
  report.mean_exact = layout.days * per_period_mean;
  report.var_exact = layout.days * per_period_var;

  std::vector<double> samples(static_cast<std::size_t>(replications));
  for (long r = 0; r < replications; ++r) {
    const EventPath path = simulate_path(intensity, bound, layout, rng);
    double integral = 0.0;
    for (double t : path.times()) integral += f(std::fmod(t, layout.period));
    samples[static_cast<std::size_t>(r)] = integral;
  }

  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(replications);
  double m2 = 0.0, m4 = 0.0;
  for (double s : samples) {
    const double d = s - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(replications);
  const double sample_var = m2 / (n - 1.0);
  m2 /= n;
  m4 /= n;

  report.mean_mc = mean;
  report.var_mc = sample_var;
  const double se_mean = std::sqrt(sample_var / n);
  // Var(s^2) = (mu4 - sigma^4 (n-3)/(n-1)) / n, from the sample moments.
  const double var_of_var = (m4 - m2 * m2 * (n - 3.0) / (n - 1.0)) / n;
  const double se_var = std::sqrt(std::max(var_of_var, 1e-300));
  report.z_mean = (mean - report.mean_exact) / se_mean;
  report.z_var = (sample_var - report.var_exact) / se_var;
  return report;
}

}  // namespace freeknot
