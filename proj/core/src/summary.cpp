#include "freeknot/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace freeknot {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

CredibleBand band(const std::vector<ChainDraw>& draws, int grid_points, double level) {
  if (draws.size() < 2) throw std::invalid_argument("band: need at least 2 retained draws");
  if (grid_points < 2) throw std::invalid_argument("band: need at least 2 grid points");
  if (!(level > 0.0) || !(level < 1.0)) {
    throw std::invalid_argument("band: level must be in (0, 1)");
  }
  const double T = draws.front().state.period();
  CredibleBand out;
  out.level = level;
  out.grid.resize(static_cast<std::size_t>(grid_points));
  out.mean.resize(static_cast<std::size_t>(grid_points));
  out.lower.resize(static_cast<std::size_t>(grid_points));
  out.upper.resize(static_cast<std::size_t>(grid_points));

  std::vector<double> values(draws.size());
  const double p_lo = (1.0 - level) / 2.0;
  const double p_hi = (1.0 + level) / 2.0;
  for (int g = 0; g < grid_points; ++g) {
    const double t = g == grid_points - 1
                         ? T
                         : T * static_cast<double>(g) / (grid_points - 1);
    double sum = 0.0;
    for (std::size_t d = 0; d < draws.size(); ++d) {
      values[d] = draws[d].state.eval(t);
      sum += values[d];
    }
    std::sort(values.begin(), values.end());
    out.grid[static_cast<std::size_t>(g)] = t;
    out.mean[static_cast<std::size_t>(g)] = sum / static_cast<double>(draws.size());
    out.lower[static_cast<std::size_t>(g)] = quantile_sorted(values, p_lo);
    out.upper[static_cast<std::size_t>(g)] = quantile_sorted(values, p_hi);
  }
  return out;
}

KnotHistogram knot_histogram(const std::vector<ChainDraw>& draws, int bins) {
  if (bins < 1) throw std::invalid_argument("knot_histogram: need bins >= 1");
  if (draws.empty()) throw std::invalid_argument("knot_histogram: empty chain");
  const double T = draws.front().state.period();
  KnotHistogram hist;
  hist.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) {
    hist.edges[static_cast<std::size_t>(b)] = T * static_cast<double>(b) / bins;
  }
  hist.counts.assign(static_cast<std::size_t>(bins), 0);
  for (const ChainDraw& draw : draws) {
    for (long idx : draw.state.grid_idx()) {
      const double pos = draw.state.knot_position(idx);
      int b = static_cast<int>(std::floor(pos / T * bins));
      b = std::clamp(b, 0, bins - 1);
      ++hist.counts[static_cast<std::size_t>(b)];
    }
  }
  return hist;
}

double DimTrace::rate(MoveKind kind) const {
  const auto i = static_cast<std::size_t>(kind);
  return proposed[i] == 0 ? 0.0
                          : static_cast<double>(accepted[i]) /
                                static_cast<double>(proposed[i]);
}

DimTrace dim_trace(const std::vector<ChainDraw>& draws) {
  DimTrace trace;
  trace.iteration.reserve(draws.size());
  trace.dim.reserve(draws.size());
  for (const ChainDraw& draw : draws) {
    trace.iteration.push_back(draw.iteration);
    trace.dim.push_back(draw.state.dim());
    ++trace.proposed[static_cast<std::size_t>(draw.move)];
    if (draw.accepted) ++trace.accepted[static_cast<std::size_t>(draw.move)];
  }
  return trace;
}

}  // namespace freeknot
