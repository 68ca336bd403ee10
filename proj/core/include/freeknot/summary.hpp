#pragma once

#include <vector>

#include "freeknot/sampler.hpp"

namespace freeknot {

// Pointwise posterior envelope of the intensity over an evaluation grid.
struct CredibleBand {
  std::vector<double> grid;
  std::vector<double> mean;
  std::vector<double> lower;
  std::vector<double> upper;
  double level = 0.0;
};

// Empirical mean and central (1-level)/2 quantiles of the draws' spline
// values per grid point. The grid is uniform on [0, T] including both
// endpoints. Quantiles interpolate order statistics linearly.
CredibleBand band(const std::vector<ChainDraw>& draws, int grid_points, double level);

// Quantile by linear interpolation of order statistics (sorted input).
double quantile_sorted(const std::vector<double>& sorted, double p);

struct KnotHistogram {
  std::vector<double> edges;  // bins + 1 entries on [0, T]
  std::vector<long> counts;
};

// Pooled interior-knot positions across draws, binned uniformly on (0, T).
KnotHistogram knot_histogram(const std::vector<ChainDraw>& draws, int bins);

struct DimTrace {
  std::vector<long> iteration;
  std::vector<int> dim;
  std::array<long, 4> proposed{};  // indexed by MoveKind
  std::array<long, 4> accepted{};
  double rate(MoveKind kind) const;
};

DimTrace dim_trace(const std::vector<ChainDraw>& draws);

}  // namespace freeknot
