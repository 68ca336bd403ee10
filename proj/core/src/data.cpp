#include "freeknot/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "freeknot/rng.hpp"

namespace freeknot {

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool looks_like_header(const std::string& line) {
  for (char c : line) {
    if (std::isalpha(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

long parse_long(const std::string& field, long line_no, const char* what) {
  long value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse " +
                             what + " from '" + field + "'");
  }
  return value;
}

double parse_double(const std::string& field, long line_no, const char* what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(field, &used);
    while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
    if (used != field.size()) throw std::invalid_argument(field);
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse " +
                             what + " from '" + field + "'");
  }
}

}  // namespace

void DataLayout::validate() const {
  if (!(period > 0.0)) throw std::invalid_argument("DataLayout: period must be positive");
  if (bins < 1) throw std::invalid_argument("DataLayout: need at least one bin");
  if (days < 1) throw std::invalid_argument("DataLayout: need at least one day");
}

BinnedCounts::BinnedCounts(DataLayout layout, std::vector<std::int64_t> counts)
    : layout_(layout), counts_(std::move(counts)) {
  layout_.validate();
  const std::size_t expected =
      static_cast<std::size_t>(layout_.days) * static_cast<std::size_t>(layout_.bins);
  if (counts_.size() != expected) {
    throw std::invalid_argument("BinnedCounts: count matrix size does not match layout");
  }
  col_sums_.assign(static_cast<std::size_t>(layout_.bins), 0);
  for (int i = 0; i < layout_.days; ++i) {
    for (int j = 0; j < layout_.bins; ++j) {
      const std::int64_t c = counts_[static_cast<std::size_t>(i) * layout_.bins + j];
      if (c < 0) throw std::invalid_argument("BinnedCounts: negative count");
      col_sums_[static_cast<std::size_t>(j)] += c;
      log_factorial_sum_ += std::lgamma(static_cast<double>(c) + 1.0);
      total_ += c;
    }
  }
}

EventPath::EventPath(DataLayout layout, std::vector<double> times)
    : layout_(layout), times_(std::move(times)) {
  layout_.validate();
  const double horizon = layout_.period * layout_.days;
  double prev = 0.0;
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!(times_[i] >= prev) || !(times_[i] <= horizon)) {
      throw std::invalid_argument("EventPath: times must be nondecreasing within [0, n*T]");
    }
    prev = times_[i];
  }
}

BinnedCounts load_counts(const std::string& path, const DataLayout& layout) {
  layout.validate();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_counts: cannot open '" + path + "'");
  std::vector<std::int64_t> counts(
      static_cast<std::size_t>(layout.days) * static_cast<std::size_t>(layout.bins), 0);
  std::string line;
  long line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    if (!seen_data && looks_like_header(line)) {
      seen_data = true;  // header row
      continue;
    }
    seen_data = true;
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 3 fields (day,bin,count)");
    }
    const long day = parse_long(fields[0], line_no, "day");
    const long bin = parse_long(fields[1], line_no, "bin");
    const long count = parse_long(fields[2], line_no, "count");
    if (day < 1 || day > layout.days) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": day " +
                               std::to_string(day) + " outside [1, " +
                               std::to_string(layout.days) + "]");
    }
    if (bin < 1 || bin > layout.bins) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": bin " +
                               std::to_string(bin) + " outside [1, " +
                               std::to_string(layout.bins) + "]");
    }
    if (count < 0) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": negative count");
    }
    counts[static_cast<std::size_t>(day - 1) * layout.bins + (bin - 1)] += count;
  }
  return BinnedCounts(layout, std::move(counts));
}

EventPath load_events(const std::string& path, double period, int bins, int days) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_events: cannot open '" + path + "'");
  std::vector<double> times;
  std::string line;
  long line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    if (!seen_data && looks_like_header(line)) {
      seen_data = true;
      continue;
    }
    seen_data = true;
    times.push_back(parse_double(line, line_no, "time"));
  }
  std::sort(times.begin(), times.end());
  if (days <= 0) {
    const double horizon = times.empty() ? period : times.back();
    days = std::max(1, static_cast<int>(std::ceil(horizon / period - 1e-12)));
  }
  return EventPath(DataLayout{period, bins, days}, std::move(times));
}

void write_events_csv(const std::string& path, const EventPath& path_data,
                      const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_events_csv: cannot open '" + path + "'");
  out << header_comment;
  out << "time\n";
  char buf[48];
  for (double t : path_data.times()) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", t);
    out << buf;
  }
}

BinnedCounts bin_events(const EventPath& ep) {
  const DataLayout& layout = ep.layout();
  std::vector<std::int64_t> counts(
      static_cast<std::size_t>(layout.days) * static_cast<std::size_t>(layout.bins), 0);
  const double T = layout.period;
  const int m = layout.bins;
  for (double t : ep.times()) {
    if (t <= 0.0) continue;  // bins are left-open; time 0 falls in none
    // Day i covers ((i-1)T, iT].
    int day = static_cast<int>(std::ceil(t / T));
    day = std::clamp(day, 1, layout.days);
    const double local = t - (day - 1) * T;
    int bin = static_cast<int>(std::ceil(local * m / T));
    bin = std::clamp(bin, 1, m);
    ++counts[static_cast<std::size_t>(day - 1) * m + (bin - 1)];
  }
  return BinnedCounts(layout, std::move(counts));
}

BinnedCounts thin_counts(const BinnedCounts& bc, std::int64_t retain_target, Rng& rng) {
  const std::int64_t total = bc.total();
  if (retain_target < 0 || retain_target > total) {
    throw std::invalid_argument("thin_counts: retain_target must be in [0, total]");
  }
  const double p = total == 0 ? 0.0 : static_cast<double>(retain_target) / total;
  std::vector<std::int64_t> thinned(bc.counts().size(), 0);
  for (std::size_t cell = 0; cell < thinned.size(); ++cell) {
    const std::int64_t c = bc.counts()[cell];
    std::int64_t kept = 0;
    for (std::int64_t e = 0; e < c; ++e) {
      if (rng.uniform() < p) ++kept;
    }
    thinned[cell] = kept;
  }
  return BinnedCounts(bc.layout(), std::move(thinned));
}

}  // namespace freeknot
