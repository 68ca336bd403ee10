#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace freeknot {

class Rng;

// Observation layout: n periods of length T, each cut into m bins of
// width T/m. The bin width is always derived, never stored.
struct DataLayout {
  double period = 0.0;  // T, in hours
  int bins = 0;         // m
  int days = 0;         // n
  double bin_width() const { return period / bins; }
  void validate() const;
};

// Count matrix C (days x bins) with its cached sufficient statistics:
// per-bin column sums S_j and the summed log factorial term.
class BinnedCounts {
 public:
  BinnedCounts(DataLayout layout, std::vector<std::int64_t> counts);

  const DataLayout& layout() const { return layout_; }
  std::int64_t at(int day, int bin) const {
    return counts_[static_cast<std::size_t>(day) * layout_.bins + bin];
  }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  const std::vector<std::int64_t>& col_sums() const { return col_sums_; }
  double log_factorial_sum() const { return log_factorial_sum_; }
  std::int64_t total() const { return total_; }

 private:
  DataLayout layout_;
  std::vector<std::int64_t> counts_;  // row-major, days x bins
  std::vector<std::int64_t> col_sums_;
  double log_factorial_sum_ = 0.0;
  std::int64_t total_ = 0;
};

// Raw event times on [0, n*T], sorted ascending.
class EventPath {
 public:
  EventPath(DataLayout layout, std::vector<double> times);

  const DataLayout& layout() const { return layout_; }
  const std::vector<double>& times() const { return times_; }

 private:
  DataLayout layout_;
  std::vector<double> times_;
};

// Reads a counts CSV (header "day,bin,count", 1-based indices). Missing
// (day, bin) pairs are zero; duplicate rows are summed. Lines starting
// with '#' are comments.
BinnedCounts load_counts(const std::string& path, const DataLayout& layout);

// Reads an events CSV (header "time", hours as decimals). days <= 0 infers
// the day count as ceil(max time / period).
EventPath load_events(const std::string& path, double period, int bins, int days);

void write_events_csv(const std::string& path, const EventPath& path_data,
                      const std::string& header_comment);

// Bins events into counts: bin j of day i covers ((j-1)*Δ, j*Δ] within the
// day, matching the counting-process convention N_t = #events in [0, t].
// An event at exactly time 0 falls in no bin.
BinnedCounts bin_events(const EventPath& ep);

// Keeps each event independently with probability retain_target / total,
// which preserves the Poisson law with a proportionally scaled intensity.
BinnedCounts thin_counts(const BinnedCounts& bc, std::int64_t retain_target, Rng& rng);

}  // namespace freeknot
