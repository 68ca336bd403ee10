#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "freeknot/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"freeknot: Bayesian estimation of periodic Poisson intensities "
               "with free-knot B-splines"};
  app.set_version_flag("--version", std::string("freeknot ") + freeknot::kVersion);
  app.require_subcommand(1);

  freeknot::cli::SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "simulate an event path by thinning");
  simulate->add_option("--intensity", sim.intensity,
                       "constant:c | sine:a,b | spline:CHAIN.csv[@ROW]")->required();
  simulate->add_option("--period", sim.period, "period T in hours");
  simulate->add_option("--days", sim.days, "number of periods");
  simulate->add_option("--bound", sim.bound,
                       "dominating rate (required for spline intensities)");
  simulate->add_option("--seed", sim.seed, "random seed");
  simulate->add_option("--out", sim.out, "output events CSV")->required();

  freeknot::cli::FitOptions fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "sample the posterior with the RJ-MCMC chain");
  fit_cmd->add_option("--counts", fit.counts_path, "counts CSV (day,bin,count)");
  fit_cmd->add_option("--events", fit.events_path, "events CSV (time)");
  fit_cmd->add_option("--period", fit.period, "period T in hours");
  fit_cmd->add_option("--bins", fit.bins, "bins per period (m)");
  fit_cmd->add_option("--days", fit.days, "periods (n); 0 infers from event files");
  fit_cmd->add_option("--order", fit.order, "spline order q");
  fit_cmd->add_option("--mu", fit.mu, "prior mean dimension");
  fit_cmd->add_option("--m1", fit.m1, "coefficient lower bound");
  fit_cmd->add_option("--m2", fit.m2, "coefficient upper bound");
  fit_cmd->add_option("--pa", fit.pa, "perturb move probability");
  fit_cmd->add_option("--pb", fit.pb, "knot move probability");
  fit_cmd->add_option("--iters", fit.iters, "total iterations");
  fit_cmd->add_option("--burnin", fit.burnin, "burn-in iterations");
  fit_cmd->add_option("--thin", fit.thin, "retain every thin-th draw");
  fit_cmd->add_option("--seed", fit.seed, "random seed");
  fit_cmd->add_flag("--prior-only", fit.prior_only, "sample the prior (likelihood = 0)");
  fit_cmd->add_flag("--init-flat", fit.init_flat,
                    "start at dimension q with constant coefficients");
  fit_cmd->add_option("--sigma0", fit.sigma0, "initial random-walk scale");
  fit_cmd->add_option("--adapt-window", fit.adapt_window, "adaptation window size");
  fit_cmd->add_option("--chains", fit.chains, "independent chains run in parallel");
  fit_cmd->add_option("--out", fit.out, "output chain CSV")->required();

  freeknot::cli::SummarizeOptions summarize;
  CLI::App* sum_cmd = app.add_subcommand("summarize", "posterior band, knot histogram, dim trace");
  sum_cmd->add_option("--chain", summarize.chain_path, "chain dump CSV")->required();
  sum_cmd->add_option("--level", summarize.level, "credible level");
  sum_cmd->add_option("--grid", summarize.grid, "evaluation grid points");
  sum_cmd->add_option("--hist-bins", summarize.hist_bins, "knot histogram bins");
  sum_cmd->add_option("--out-prefix", summarize.out_prefix, "output file prefix")->required();

  freeknot::cli::DistancesOptions dist;
  CLI::App* dist_cmd = app.add_subcommand("distances", "statistical distances between intensities");
  dist_cmd->add_option("--a", dist.a, "first intensity spec")->required();
  dist_cmd->add_option("--b", dist.b, "second intensity spec")->required();
  dist_cmd->add_option("--period", dist.period, "period T in hours");
  dist_cmd->add_option("--bins", dist.bins, "bins for the binned distance");
  dist_cmd->add_option("--out", dist.out, "output CSV (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return freeknot::cli::cmd_simulate(sim);
    if (fit_cmd->parsed()) return freeknot::cli::cmd_fit(fit);
    if (sum_cmd->parsed()) return freeknot::cli::cmd_summarize(summarize);
    if (dist_cmd->parsed()) return freeknot::cli::cmd_distances(dist);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
