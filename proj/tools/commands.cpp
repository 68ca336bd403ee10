#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "freeknot/data.hpp"
#include "freeknot/io.hpp"
#include "freeknot/metrics.hpp"
#include "freeknot/model.hpp"
#include "freeknot/prior.hpp"
#include "freeknot/rng.hpp"
#include "freeknot/sampler.hpp"
#include "freeknot/simulate.hpp"
#include "freeknot/summary.hpp"

namespace freeknot::cli {

namespace {

std::string fmt(double v) { return format_double(v); }

// Parses "name:args" intensity specs shared by simulate and distances.
// For spline specs the state is taken from a chain dump: spline:FILE picks
// the last retained draw, spline:FILE@K the K-th (0-based).
struct ParsedIntensity {
  Intensity intensity;
  double natural_bound = 0.0;  // 0: no built-in bound (spline specs)
};

ParsedIntensity parse_intensity(const std::string& spec, double period) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("intensity spec '" + spec +
                                "' must look like constant:c, sine:a,b or spline:FILE[@ROW]");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (kind == "constant") {
    const double c = std::stod(args);
    if (c < 0.0) throw std::invalid_argument("constant intensity must be nonnegative");
    return {constant_intensity(c, period), c};
  }
  if (kind == "sine") {
    const std::size_t comma = args.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("sine spec needs two parameters: sine:a,b");
    }
    const double a = std::stod(args.substr(0, comma));
    const double b = std::stod(args.substr(comma + 1));
    if (a - std::abs(b) < 0.0) {
      throw std::invalid_argument("sine intensity dips below zero; need a >= |b|");
    }
    return {sine_intensity(a, b, period), a + std::abs(b)};
  }
  if (kind == "spline") {
    std::string file = args;
    std::size_t row = std::string::npos;
    const std::size_t at = args.rfind('@');
    if (at != std::string::npos) {
      file = args.substr(0, at);
      row = static_cast<std::size_t>(std::stoul(args.substr(at + 1)));
    }
    const LoadedChain chain = read_chain_csv(file);
    if (chain.draws.empty()) throw std::runtime_error("chain dump '" + file + "' has no draws");
    if (row == std::string::npos) row = chain.draws.size() - 1;
    if (row >= chain.draws.size()) {
      throw std::invalid_argument("chain dump row " + std::to_string(row) + " out of range");
    }
    const SplineState& state = chain.draws[row].state;
    if (state.period() != period) {
      throw std::invalid_argument("chain dump period " + fmt(state.period()) +
                                  " does not match --period " + fmt(period));
    }
    return {make_intensity(state), 0.0};
  }
  throw std::invalid_argument("unknown intensity kind '" + kind + "'");
}

std::string chain_output_path(const std::string& out, int chain_index, int chains) {
  if (chains == 1) return out;
  const std::size_t dot = out.rfind('.');
  const std::string stem = dot == std::string::npos ? out : out.substr(0, dot);
  const std::string ext = dot == std::string::npos ? "" : out.substr(dot);
  return stem + ".chain" + std::to_string(chain_index) + ext;
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt) {
  if (opt.out.empty()) throw std::invalid_argument("simulate: --out is required");
  const ParsedIntensity parsed = parse_intensity(opt.intensity, opt.period);
  double bound = opt.bound;
  if (bound <= 0.0) {
    if (parsed.natural_bound <= 0.0) {
      throw std::invalid_argument("simulate: --bound is required for spline intensities");
    }
    bound = parsed.natural_bound;
  }
  const DataLayout layout{opt.period, 1, opt.days};
  Rng rng(opt.seed);
  const EventPath path = simulate_path(parsed.intensity.f, bound, layout, rng);

  std::ostringstream echo;
  echo << "simulate --intensity " << opt.intensity << " --period " << fmt(opt.period)
       << " --days " << opt.days << " --bound " << fmt(bound) << " --seed " << opt.seed
       << " --out " << opt.out;
  write_events_csv(opt.out, path, output_header("events", echo.str()));
  std::cout << "simulated " << path.times().size() << " events over " << opt.days
            << " periods -> " << opt.out << "\n";
  return 0;
}

int cmd_fit(const FitOptions& opt) {
  if (opt.out.empty()) throw std::invalid_argument("fit: --out is required");
  if (!opt.counts_path.empty() && !opt.events_path.empty()) {
    throw std::invalid_argument("fit: give either --counts or --events, not both");
  }
  if (opt.counts_path.empty() && opt.events_path.empty() && !opt.prior_only) {
    throw std::invalid_argument("fit: need --counts or --events (or --prior-only)");
  }
  if (opt.pa + opt.pb >= 1.0) {
    throw std::invalid_argument("fit: need --pa + --pb < 1");
  }

  PriorConfig prior{opt.order, opt.mu, opt.m1, opt.m2, opt.period};
  prior.validate();
  MoveSchedule schedule{opt.pa, opt.pb, opt.order, opt.mu};
  schedule.validate();

  // Data ingestion (skipped entirely in prior-only mode).
  BinnedCounts* counts = nullptr;
  EventPath* events = nullptr;
  std::unique_ptr<BinnedCounts> counts_store;
  std::unique_ptr<EventPath> events_store;
  double mean_rate = (opt.m1 + opt.m2) / 2.0;
  if (!opt.prior_only) {
    if (!opt.counts_path.empty()) {
      DataLayout layout{opt.period, opt.bins, opt.days};
      counts_store = std::make_unique<BinnedCounts>(load_counts(opt.counts_path, layout));
      counts = counts_store.get();
      mean_rate = static_cast<double>(counts->total()) /
                  (static_cast<double>(layout.days) * layout.period);
    } else {
      events_store = std::make_unique<EventPath>(
          load_events(opt.events_path, opt.period, opt.bins, opt.days));
      events = events_store.get();
      mean_rate = static_cast<double>(events->times().size()) /
                  (static_cast<double>(events->layout().days) * opt.period);
    }
  }

  ChainConfig cfg;
  cfg.prior = prior;
  cfg.schedule = schedule;
  cfg.iterations = opt.iters;
  cfg.burn_in = opt.burnin;
  cfg.thin = opt.thin;
  cfg.sigma0 = opt.sigma0;
  cfg.adapt_window = opt.adapt_window;
  cfg.validate();

  std::ostringstream echo;
  echo << "fit";
  if (!opt.counts_path.empty()) echo << " --counts " << opt.counts_path;
  if (!opt.events_path.empty()) echo << " --events " << opt.events_path;
  echo << " --period " << fmt(opt.period) << " --bins " << opt.bins << " --days " << opt.days
       << " --order " << opt.order << " --mu " << fmt(opt.mu) << " --m1 " << fmt(opt.m1)
       << " --m2 " << fmt(opt.m2) << " --pa " << fmt(opt.pa) << " --pb " << fmt(opt.pb)
       << " --iters " << opt.iters << " --burnin " << opt.burnin << " --thin " << opt.thin
       << " --seed " << opt.seed;
  if (opt.prior_only) echo << " --prior-only";
  if (opt.init_flat) echo << " --init-flat";
  echo << " --sigma0 " << fmt(opt.sigma0) << " --adapt-window " << opt.adapt_window
       << " --chains " << opt.chains << " --out " << opt.out;

  const auto run_one = [&](int chain_index) {
    ChainConfig chain_cfg = cfg;
    chain_cfg.seed = opt.seed + static_cast<std::uint64_t>(chain_index);
    PosteriorTarget target{prior, counts, events};
    Rng init_rng(chain_cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    const SplineState init =
        opt.init_flat ? flat_init(prior, mean_rate) : sample_prior(prior, init_rng);
    ChainResult result = run_chain(chain_cfg, target, init);

    std::map<std::string, std::string> meta;
    meta["order"] = std::to_string(opt.order);
    meta["period"] = fmt(opt.period);
    meta["mu"] = fmt(opt.mu);
    meta["m1"] = fmt(opt.m1);
    meta["m2"] = fmt(opt.m2);
    meta["pa"] = fmt(opt.pa);
    meta["pb"] = fmt(opt.pb);
    meta["iters"] = std::to_string(opt.iters);
    meta["burnin"] = std::to_string(opt.burnin);
    meta["thin"] = std::to_string(opt.thin);
    meta["seed"] = std::to_string(chain_cfg.seed);
    write_chain_csv(chain_output_path(opt.out, chain_index, opt.chains), result.draws,
                    meta, echo.str());
    return result;
  };

  std::vector<ChainResult> results(static_cast<std::size_t>(opt.chains));
  if (opt.chains == 1) {
    results[0] = run_one(0);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(opt.chains));
    for (int c = 0; c < opt.chains; ++c) {
      workers.emplace_back([&results, &run_one, c] { results[static_cast<std::size_t>(c)] = run_one(c); });
    }
    for (std::thread& w : workers) w.join();
  }

  for (int c = 0; c < opt.chains; ++c) {
    const ChainResult& r = results[static_cast<std::size_t>(c)];
    std::cout << "chain " << c << ": retained " << r.draws.size()
              << " draws, final sigma " << fmt(r.final_sigma) << "\n";
    std::cout << "  move        proposed  accepted  rate (post burn-in)\n";
    for (int k = 0; k < 4; ++k) {
      const auto kind = static_cast<MoveKind>(k);
      std::printf("  %-10s %9ld %9ld  %.4f\n", move_name(kind),
                  r.sampling_stats.proposed[static_cast<std::size_t>(k)],
                  r.sampling_stats.accepted[static_cast<std::size_t>(k)],
                  r.sampling_stats.rate(kind));
    }
  }
  return 0;
}

int cmd_summarize(const SummarizeOptions& opt) {
  if (opt.chain_path.empty()) throw std::invalid_argument("summarize: --chain is required");
  if (opt.out_prefix.empty()) throw std::invalid_argument("summarize: --out-prefix is required");
  const LoadedChain chain = read_chain_csv(opt.chain_path);
  if (chain.draws.empty()) {
    throw std::runtime_error("summarize: chain dump has no retained draws");
  }

  std::ostringstream echo;
  echo << "summarize --chain " << opt.chain_path << " --level " << fmt(opt.level)
       << " --grid " << opt.grid << " --hist-bins " << opt.hist_bins << " --out-prefix "
       << opt.out_prefix;

  // A single-draw dump degenerates to lower = mean = upper.
  std::vector<ChainDraw> for_band = chain.draws;
  if (for_band.size() == 1) for_band.push_back(for_band.front());
  const CredibleBand cb = band(for_band, opt.grid, opt.level);
  write_band_csv(opt.out_prefix + "_band.csv", cb, echo.str());
  const KnotHistogram hist = knot_histogram(chain.draws, opt.hist_bins);
  write_histogram_csv(opt.out_prefix + "_knots.csv", hist, echo.str());
  const DimTrace trace = dim_trace(chain.draws);
  write_trace_csv(opt.out_prefix + "_trace.csv", trace, echo.str());

  std::cout << "summarized " << chain.draws.size() << " draws\n";
  std::cout << "  move        retained  accepted  rate\n";
  for (int k = 0; k < 4; ++k) {
    const auto kind = static_cast<MoveKind>(k);
    std::printf("  %-10s %9ld %9ld  %.4f\n", move_name(kind),
                trace.proposed[static_cast<std::size_t>(k)],
                trace.accepted[static_cast<std::size_t>(k)], trace.rate(kind));
  }
  return 0;
}

int cmd_distances(const DistancesOptions& opt) {
  const ParsedIntensity a = parse_intensity(opt.a, opt.period);
  const ParsedIntensity b = parse_intensity(opt.b, opt.period);
  const DataLayout layout{opt.period, opt.bins, 1};

  std::ostringstream echo;
  echo << "distances --a " << opt.a << " --b " << opt.b << " --period " << fmt(opt.period)
       << " --bins " << opt.bins;

  std::ostringstream body;
  body << "metric,value\n";
  body << "hellinger_sq," << fmt(hellinger_sq(a.intensity, b.intensity)) << "\n";
  body << "kl," << fmt(kl(a.intensity, b.intensity)) << "\n";
  body << "variance_v," << fmt(variance_v(a.intensity, b.intensity)) << "\n";
  body << "rho," << fmt(rho(a.intensity, b.intensity, layout)) << "\n";
  body << "sqrt_l2," << fmt(sqrt_l2(a.intensity, b.intensity)) << "\n";
  body << "l2," << fmt(l2(a.intensity, b.intensity)) << "\n";
  body << "sup," << fmt(sup_dist(a.intensity, b.intensity)) << "\n";

  if (opt.out.empty()) {
    std::cout << output_header("distances", echo.str()) << body.str();
  } else {
    std::ofstream out(opt.out);
    if (!out) throw std::runtime_error("distances: cannot open '" + opt.out + "'");
    out << output_header("distances", echo.str()) << body.str();
  }
  return 0;
}

}  // namespace freeknot::cli
