#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "freeknot/data.hpp"
#include "freeknot/rng.hpp"

using namespace freeknot;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/freeknot_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_SUITE("data") {

TEST_CASE("layout validation") {
  CHECK_THROWS_AS((DataLayout{0.0, 4, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DataLayout{24.0, 0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DataLayout{24.0, 4, 0}.validate()), std::invalid_argument);
  const DataLayout ok{24.0, 2880, 61};
  ok.validate();
  CHECK(ok.bin_width() == doctest::Approx(24.0 / 2880).epsilon(1e-15));
}

TEST_CASE("load_counts") {
  SUBCASE("empty file means all-zero counts") {
    const std::string path = write_temp("empty.csv", "");
    const BinnedCounts bc = load_counts(path, DataLayout{1.0, 2, 1});
    CHECK(bc.total() == 0);
    CHECK(bc.at(0, 0) == 0);
    CHECK(bc.at(0, 1) == 0);
    CHECK(bc.log_factorial_sum() == 0.0);
  }
  SUBCASE("duplicates are summed") {
    const std::string path =
        write_temp("dup.csv", "day,bin,count\n1,1,3\n1,1,2\n");
    const BinnedCounts bc = load_counts(path, DataLayout{1.0, 2, 1});
    CHECK(bc.at(0, 0) == 5);
    CHECK(bc.total() == 5);
  }
  SUBCASE("out-of-range day") {
    const std::string path = write_temp("range.csv", "day,bin,count\n2,1,1\n");
    CHECK_THROWS_WITH_AS(load_counts(path, DataLayout{1.0, 2, 1}),
                         doctest::Contains("line 2"), std::runtime_error);
  }
  SUBCASE("malformed row names the line") {
    const std::string path =
        write_temp("bad.csv", "day,bin,count\n1,1,4\n1,zebra,1\n");
    CHECK_THROWS_WITH_AS(load_counts(path, DataLayout{1.0, 2, 1}),
                         doctest::Contains("line 3"), std::runtime_error);
  }
  SUBCASE("comments and blank lines are ignored") {
    const std::string path = write_temp(
        "comments.csv", "# a header comment\nday,bin,count\n\n1,2,7\n");
    const BinnedCounts bc = load_counts(path, DataLayout{1.0, 2, 1});
    CHECK(bc.at(0, 1) == 7);
  }
  SUBCASE("sufficient statistics are cached consistently") {
    const std::string path =
        write_temp("stats.csv", "day,bin,count\n1,1,3\n2,1,1\n2,2,4\n");
    const BinnedCounts bc = load_counts(path, DataLayout{1.0, 2, 2});
    CHECK(bc.col_sums()[0] == 4);
    CHECK(bc.col_sums()[1] == 4);
    const double expected = std::lgamma(4.0) + std::lgamma(2.0) + std::lgamma(5.0);
    CHECK(bc.log_factorial_sum() == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("bin_events") {
  SUBCASE("empty path gives zeros") {
    const EventPath ep(DataLayout{1.0, 2, 1}, {});
    const BinnedCounts bc = bin_events(ep);
    CHECK(bc.total() == 0);
  }
  SUBCASE("direct binning") {
    const EventPath ep(DataLayout{1.0, 2, 1}, {0.25, 0.75, 0.8});
    const BinnedCounts bc = bin_events(ep);
    CHECK(bc.at(0, 0) == 1);
    CHECK(bc.at(0, 1) == 2);
  }
  SUBCASE("boundary events go to the left-open bin") {
    const EventPath ep(DataLayout{1.0, 2, 2}, {0.5, 1.0, 1.5, 2.0});
    const BinnedCounts bc = bin_events(ep);
    CHECK(bc.at(0, 0) == 1);  // 0.5 in (0, 0.5]
    CHECK(bc.at(0, 1) == 1);  // 1.0 closes day 1
    CHECK(bc.at(1, 0) == 1);
    CHECK(bc.at(1, 1) == 1);
  }
  SUBCASE("conservation on random paths vs brute-force counting") {
    Rng rng(7);
    for (int rep = 0; rep < 100; ++rep) {
      const int days = 1 + static_cast<int>(rng.uniform_int(3));
      const int bins = 1 + static_cast<int>(rng.uniform_int(6));
      const double T = rng.uniform(0.5, 30.0);
      const int n_events = static_cast<int>(rng.uniform_int(40));
      std::vector<double> times(static_cast<std::size_t>(n_events));
      for (double& t : times) t = rng.uniform(1e-12, days * T);
      std::sort(times.begin(), times.end());
      const EventPath ep(DataLayout{T, bins, days}, times);
      const BinnedCounts bc = bin_events(ep);

      CHECK(bc.total() == n_events);
      const double width = T / bins;
      for (int i = 0; i < days; ++i) {
        for (int j = 0; j < bins; ++j) {
          long brute = 0;
          const double lo = i * T + j * width;
          const double hi = j == bins - 1 ? (i + 1) * T : i * T + (j + 1) * width;
          for (double t : times) {
            if (t > lo && t <= hi) ++brute;
          }
          CHECK(bc.at(i, j) == brute);
        }
      }
    }
  }
}

TEST_CASE("events csv round trip") {
  const EventPath ep(DataLayout{24.0, 4, 2}, {0.125, 7.25, 24.0, 33.999});
  const std::string path = "/tmp/freeknot_test_events.csv";
  write_events_csv(path, ep, "# test\n");
  const EventPath back = load_events(path, 24.0, 4, 2);
  CHECK(back.times() == ep.times());

  // Day inference: ceil(max time / T).
  const EventPath inferred = load_events(path, 24.0, 4, 0);
  CHECK(inferred.layout().days == 2);
}

TEST_CASE("event path invariants") {
  CHECK_THROWS_AS((EventPath(DataLayout{1.0, 2, 1}, {0.5, 0.25})), std::invalid_argument);
  CHECK_THROWS_AS((EventPath(DataLayout{1.0, 2, 1}, {0.5, 1.25})), std::invalid_argument);
}

TEST_CASE("thin_counts") {
  const DataLayout layout{1.0, 3, 2};
  const BinnedCounts bc(layout, {5, 0, 2, 1, 9, 3});

  SUBCASE("retain everything is the identity") {
    Rng rng(1);
    const BinnedCounts same = thin_counts(bc, bc.total(), rng);
    CHECK(same.counts() == bc.counts());
  }
  SUBCASE("retain nothing zeroes out") {
    Rng rng(2);
    const BinnedCounts none = thin_counts(bc, 0, rng);
    CHECK(none.total() == 0);
  }
  SUBCASE("target above the total is rejected") {
    Rng rng(3);
    CHECK_THROWS_AS(thin_counts(bc, bc.total() + 1, rng), std::invalid_argument);
  }
  SUBCASE("binomial concentration at scale") {
    // 2.8e6 events thinned to ~1000: the retained total concentrates
    // within 4 standard deviations.
    const int bins = 280;
    std::vector<std::int64_t> big(bins, 10000);
    const BinnedCounts huge(DataLayout{24.0, bins, 1}, std::move(big));
    CHECK(huge.total() == 2800000);
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      Rng rng(seed);
      const BinnedCounts thinned = thin_counts(huge, 1000, rng);
      CHECK(std::abs(static_cast<double>(thinned.total()) - 1000.0) <=
            4.0 * std::sqrt(1000.0));
    }
  }
}

}  // TEST_SUITE
