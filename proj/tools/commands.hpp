#pragma once

#include <cstdint>
#include <string>

namespace freeknot::cli {

struct SimulateOptions {
  std::string intensity;  // constant:c | sine:a,b | spline:CHAIN.csv[@ROW]
  double period = 24.0;
  int days = 1;
  double bound = 0.0;  // <= 0: derived for the built-ins, required for splines
  std::uint64_t seed = 0;
  std::string out;
};

struct FitOptions {
  std::string counts_path;
  std::string events_path;
  double period = 24.0;
  int bins = 2880;
  int days = 0;  // 0: inferred for event files
  int order = 4;
  double mu = 10.0;
  double m1 = 200.0;
  double m2 = 20000.0;
  double pa = 0.4;
  double pb = 0.2;
  long iters = 10000;
  long burnin = 5000;
  long thin = 10;
  std::uint64_t seed = 0;
  bool prior_only = false;
  bool init_flat = false;
  double sigma0 = 0.0;
  int adapt_window = 50;
  int chains = 1;
  std::string out;
};

struct SummarizeOptions {
  std::string chain_path;
  std::string out_prefix;
  double level = 0.95;
  int grid = 512;
  int hist_bins = 96;
};

struct DistancesOptions {
  std::string a;  // intensity spec, as in simulate
  std::string b;
  double period = 24.0;
  int bins = 2880;
  std::string out;  // empty: stdout
};

int cmd_simulate(const SimulateOptions& opt);
int cmd_fit(const FitOptions& opt);
int cmd_summarize(const SummarizeOptions& opt);
int cmd_distances(const DistancesOptions& opt);

}  // namespace freeknot::cli
