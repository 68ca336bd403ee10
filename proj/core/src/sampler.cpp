#include "freeknot/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "freeknot/rng.hpp"

namespace freeknot {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_std_normal(double z) {
  return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
}

std::vector<long> remove_at(const std::vector<long>& v, int pos) {
  std::vector<long> out(v);
  out.erase(out.begin() + pos);
  return out;
}

// Existing knots re-rounded onto the destination grid. Rounding to a finer
// grid cannot collide or reorder; rounding to a coarser grid can, in which
// case ok is false and the move is infeasible.
struct Rerounded {
  std::vector<long> idx;
  bool ok = true;
};

Rerounded reround_all(const std::vector<long>& src, long from_size, long to_size) {
  Rerounded out;
  out.idx.reserve(src.size());
  long prev = 0;
  for (long v : src) {
    const long r = reround_index(v, from_size, to_size);
    if (r <= prev || r > to_size) {
      out.ok = false;
      return out;
    }
    out.idx.push_back(r);
    prev = r;
  }
  return out;
}

ProposalAudit infeasible(const SplineState& x, double log_post_x) {
  ProposalAudit audit{x, log_post_x, 0.0, 0.0, kNegInf, false};
  return audit;
}

}  // namespace

const char* move_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::perturb: return "perturb";
    case MoveKind::knot_move: return "knot_move";
    case MoveKind::birth: return "birth";
    case MoveKind::death: return "death";
  }
  return "unknown";
}

void MoveSchedule::validate() const {
  if (!(p_a > 0.0) || !(p_b > 0.0) || !(p_a + p_b < 1.0)) {
    throw std::invalid_argument("MoveSchedule: need p_a, p_b in (0,1) with p_a + p_b < 1");
  }
  if (order < 2 || !(mean_dim > order)) {
    throw std::invalid_argument("MoveSchedule: need order >= 2 and mean_dim > order");
  }
}

double MoveSchedule::p_c(int j) const {
  return (1.0 - p_a - p_b) *
         std::exp2(-static_cast<double>(j - order) / (mean_dim - order));
}

double MoveSchedule::p_d(int j) const { return (1.0 - p_a - p_b) - p_c(j); }

MoveKind select_move(int j, const MoveSchedule& ms, Rng& rng) {
  const double u = rng.uniform();
  if (u < ms.p_a) return MoveKind::perturb;
  if (u < ms.p_a + ms.p_b) return MoveKind::knot_move;
  if (u < ms.p_a + ms.p_b + ms.p_c(j)) return MoveKind::birth;
  return MoveKind::death;
}

AdaptState adapt_sigma(AdaptState adapt, int window) {
  if (adapt.frozen) return adapt;
  if (adapt.window_total < window) return adapt;
  const double rate =
      static_cast<double>(adapt.window_accepts) / static_cast<double>(adapt.window_total);
  const double factor = std::clamp(std::exp(rate - 0.23), 0.5, 2.0);
  adapt.sigma *= factor;
  adapt.window_accepts = 0;
  adapt.window_total = 0;
  return adapt;
}

double PosteriorTarget::log_likelihood(const SplineState& state) const {
  if (counts != nullptr) return loglik_binned(state, *counts);
  if (events != nullptr) return loglik_full(state, *events);
  return 0.0;
}

double PosteriorTarget::log_posterior(const SplineState& state) const {
  const double lp = log_prior(state, prior);
  if (lp == kNegInf) return kNegInf;
  const double ll = log_likelihood(state);
  return lp + ll;
}

long reround_index(long idx, long from_size, long to_size) {
  // Position idx/(from+1) mapped to the destination scale, rounded to the
  // nearest integer with ties down; exact in integer arithmetic.
  const long p = idx * (to_size + 1);
  const long q = from_size + 1;
  const long quot = p / q;
  const long rem = p % q;
  return 2 * rem > q ? quot + 1 : quot;
}

Insertion insertion_point(int order, long k, const std::vector<long>& existing, long grid) {
  int rank = 0;
  while (rank < static_cast<int>(existing.size()) &&
         existing[static_cast<std::size_t>(rank)] < k) {
    ++rank;
  }
  const long left = rank == 0 ? 0 : existing[static_cast<std::size_t>(rank) - 1];
  const long right = rank == static_cast<int>(existing.size())
                         ? grid + 1
                         : existing[static_cast<std::size_t>(rank)];
  const long offset = (order + 1) * (k - left) / (right - left);
  return Insertion{rank, rank + static_cast<int>(std::min<long>(offset, order))};
}

double seed_mean(const KnotSet& dest_knots, int coef_index,
                 std::span<const double> theta) {
  const std::vector<double> w = basis_inner_products(dest_knots, coef_index);
  double num = 0.0;
  double den = 0.0;
  for (int l = 0; l < static_cast<int>(w.size()); ++l) {
    if (l == coef_index) continue;
    const int old_index = l < coef_index ? l : l - 1;
    num += w[static_cast<std::size_t>(l)] * theta[static_cast<std::size_t>(old_index)];
    den += w[static_cast<std::size_t>(l)];
  }
  return num / den;
}

ProposalAudit audit_perturb(const SplineState& x, double log_post_x,
                            std::span<const double> u, double sigma,
                            const PosteriorTarget& target, const MoveSchedule& ms) {
  const int j = x.dim();
  if (static_cast<int>(u.size()) != j) {
    throw std::invalid_argument("audit_perturb: innovation size must equal the dimension");
  }
  std::vector<double> theta(x.theta());
  double log_density = 0.0;
  for (int i = 0; i < j; ++i) {
    theta[static_cast<std::size_t>(i)] += sigma * u[static_cast<std::size_t>(i)];
    log_density += log_std_normal(u[static_cast<std::size_t>(i)]) - std::log(sigma);
  }
  ProposalAudit audit{
      SplineState(x.order(), x.period(), x.grid_idx(), std::move(theta)),
      0.0, 0.0, 0.0, 0.0, true};
  audit.log_post_state = target.log_posterior(audit.state);
  audit.log_forward = std::log(ms.p_a) + log_density;
  audit.log_reverse = audit.log_forward;  // symmetric innovation
  audit.log_accept = audit.log_post_state - log_post_x;
  return audit;
}

ProposalAudit audit_knot_move(const SplineState& x, double log_post_x,
                              int knot_rank, int direction,
                              const PosteriorTarget& target, const MoveSchedule& ms) {
  const int j = x.dim();
  const int n_knots = j - x.order();
  if (knot_rank < 0 || knot_rank >= n_knots) {
    throw std::invalid_argument("audit_knot_move: knot rank out of range");
  }
  if (direction != -1 && direction != 1) {
    throw std::invalid_argument("audit_knot_move: direction must be -1 or +1");
  }
  const long target_idx = x.grid_idx()[static_cast<std::size_t>(knot_rank)] + direction;
  if (target_idx < 1 || target_idx > x.grid() ||
      std::find(x.grid_idx().begin(), x.grid_idx().end(), target_idx) !=
          x.grid_idx().end()) {
    return infeasible(x, log_post_x);
  }
  std::vector<long> idx(x.grid_idx());
  idx[static_cast<std::size_t>(knot_rank)] = target_idx;
  ProposalAudit audit{
      SplineState(x.order(), x.period(), std::move(idx), x.theta()),
      0.0, 0.0, 0.0, 0.0, true};
  audit.log_post_state = target.log_posterior(audit.state);
  // Chosen knot 1/(j-q), then the specific free neighbor with probability
  // 1/2; the vacated position is free in the reverse configuration, so the
  // same factors appear on both sides.
  const double log_choice = std::log(ms.p_b) - std::log(static_cast<double>(n_knots)) -
                            std::log(2.0);
  audit.log_forward = log_choice;
  audit.log_reverse = log_choice;
  audit.log_accept = audit.log_post_state - log_post_x;
  return audit;
}

ProposalAudit audit_birth(const SplineState& x, double log_post_x,
                          long new_knot_idx, double z,
                          const PosteriorTarget& target, const MoveSchedule& ms) {
  const int q = x.order();
  const int j = x.dim();
  const long dest_grid = grid_size(j + 1);
  const Rerounded dest = reround_all(x.grid_idx(), x.grid(), dest_grid);
  if (!dest.ok) return infeasible(x, log_post_x);
  if (new_knot_idx < 1 || new_knot_idx > dest_grid ||
      std::find(dest.idx.begin(), dest.idx.end(), new_knot_idx) != dest.idx.end()) {
    throw std::invalid_argument("audit_birth: new knot must be a free destination position");
  }
  const long free_count = dest_grid - static_cast<long>(dest.idx.size());
  const Insertion ins = insertion_point(q, new_knot_idx, dest.idx, dest_grid);

  std::vector<long> idx(dest.idx);
  idx.insert(idx.begin() + ins.knot_rank, new_knot_idx);

  // Seed coefficient around the overlap-weighted mean; the insertion map
  // (theta, u) -> theta' has unit Jacobian.
  const KnotSet dest_knots(q, x.period(),
                           [&] {
                             std::vector<double> pos;
                             pos.reserve(idx.size());
                             for (long v : idx) {
                               pos.push_back(static_cast<double>(v) * x.period() /
                                             (static_cast<double>(dest_grid) + 1.0));
                             }
                             return pos;
                           }());
  const double eta = seed_mean(dest_knots, ins.coef_index, x.theta());
  const double u = eta + z;

  std::vector<double> theta(x.theta());
  theta.insert(theta.begin() + ins.coef_index, u);

  ProposalAudit audit{
      SplineState(q, x.period(), std::move(idx), std::move(theta)),
      0.0, 0.0, 0.0, 0.0, true};
  audit.log_post_state = target.log_posterior(audit.state);
  audit.log_forward = std::log(ms.p_c(j)) - std::log(static_cast<double>(free_count)) +
                      log_std_normal(u - eta);
  audit.log_reverse = std::log(ms.p_d(j + 1)) -
                      std::log(static_cast<double>(j + 1 - q));
  audit.log_accept = (audit.log_post_state + audit.log_reverse) -
                     (log_post_x + audit.log_forward);
  return audit;
}

ProposalAudit audit_death(const SplineState& x, double log_post_x,
                          int knot_rank,
                          const PosteriorTarget& target, const MoveSchedule& ms) {
  const int q = x.order();
  const int j = x.dim();
  const int n_knots = j - q;
  if (n_knots <= 0) return infeasible(x, log_post_x);
  if (knot_rank < 0 || knot_rank >= n_knots) {
    throw std::invalid_argument("audit_death: knot rank out of range");
  }

  const long removed = x.grid_idx()[static_cast<std::size_t>(knot_rank)];
  const std::vector<long> remaining = remove_at(x.grid_idx(), knot_rank);

  // Coefficient slot and seed the reverse birth would have used.
  const Insertion ins = insertion_point(q, removed, remaining, x.grid());
  const double u = x.theta()[static_cast<std::size_t>(ins.coef_index)];
  std::vector<double> theta(x.theta());
  theta.erase(theta.begin() + ins.coef_index);

  // Down-round the remaining knots; reject on collision or when the reverse
  // birth's up-rounding would not land back on the current knots.
  const long src_grid = grid_size(j - 1);
  const Rerounded down = reround_all(remaining, x.grid(), src_grid);
  if (!down.ok) return infeasible(x, log_post_x);
  const Rerounded round_trip = reround_all(down.idx, src_grid, x.grid());
  if (!round_trip.ok || round_trip.idx != remaining) {
    return infeasible(x, log_post_x);
  }

  ProposalAudit audit{
      SplineState(q, x.period(), down.idx, std::move(theta)),
      0.0, 0.0, 0.0, 0.0, true};
  audit.log_post_state = target.log_posterior(audit.state);

  const long free_count = static_cast<long>(x.grid()) -
                          static_cast<long>(remaining.size());
  const double eta = seed_mean(x.knots(), ins.coef_index, audit.state.theta());
  audit.log_forward = std::log(ms.p_d(j)) - std::log(static_cast<double>(n_knots));
  audit.log_reverse = std::log(ms.p_c(j - 1)) -
                      std::log(static_cast<double>(free_count)) +
                      log_std_normal(u - eta);
  audit.log_accept = (audit.log_post_state + audit.log_reverse) -
                     (log_post_x + audit.log_forward);
  return audit;
}

namespace {

MoveResult resolve(const SplineState& x, double log_post_x,
                   const ProposalAudit& audit, Rng& rng) {
  // Accept iff log(V) <= log A with V uniform on (0, 1]; a ratio of exactly
  // one therefore always accepts.
  if (audit.feasible && std::log(1.0 - rng.uniform()) <= audit.log_accept) {
    return MoveResult{audit.state, audit.log_post_state, true};
  }
  return MoveResult{x, log_post_x, false};
}

}  // namespace

MoveResult perturb_move(const SplineState& x, double log_post_x,
                        const PosteriorTarget& target, const MoveSchedule& ms,
                        double sigma, Rng& rng) {
  std::vector<double> u(static_cast<std::size_t>(x.dim()));
  for (double& v : u) v = rng.normal();
  const ProposalAudit audit = audit_perturb(x, log_post_x, u, sigma, target, ms);
  return resolve(x, log_post_x, audit, rng);
}

MoveResult knot_move(const SplineState& x, double log_post_x,
                     const PosteriorTarget& target, const MoveSchedule& ms, Rng& rng) {
  const int n_knots = x.dim() - x.order();
  if (n_knots <= 0) return MoveResult{x, log_post_x, false};
  const int rank = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_knots)));
  const long idx = x.grid_idx()[static_cast<std::size_t>(rank)];
  const auto occupied = [&](long v) {
    return std::find(x.grid_idx().begin(), x.grid_idx().end(), v) != x.grid_idx().end();
  };
  const bool left_free = idx - 1 >= 1 && !occupied(idx - 1);
  const bool right_free = idx + 1 <= x.grid() && !occupied(idx + 1);

  int direction = 0;
  if (left_free && right_free) {
    direction = rng.uniform() < 0.5 ? -1 : 1;
  } else if (left_free || right_free) {
    // With probability 1/2 move to the single free neighbor, else stay.
    if (rng.uniform() < 0.5) direction = left_free ? -1 : 1;
  }
  if (direction == 0) {
    // Staying proposes the current state, which is accepted with probability 1.
    return MoveResult{x, log_post_x, true};
  }
  const ProposalAudit audit = audit_knot_move(x, log_post_x, rank, direction, target, ms);
  return resolve(x, log_post_x, audit, rng);
}

MoveResult birth_move(const SplineState& x, double log_post_x,
                      const PosteriorTarget& target, const MoveSchedule& ms, Rng& rng) {
  const long dest_grid = grid_size(x.dim() + 1);
  const Rerounded dest = reround_all(x.grid_idx(), x.grid(), dest_grid);
  if (!dest.ok) return MoveResult{x, log_post_x, false};
  const long free_count = dest_grid - static_cast<long>(dest.idx.size());
  if (free_count <= 0) return MoveResult{x, log_post_x, false};

  // rank-th free destination position, in increasing grid order.
  long rank = static_cast<long>(rng.uniform_int(static_cast<std::uint64_t>(free_count)));
  long new_idx = 0;
  std::size_t occupied_pos = 0;
  for (long v = 1; v <= dest_grid; ++v) {
    if (occupied_pos < dest.idx.size() && dest.idx[occupied_pos] == v) {
      ++occupied_pos;
      continue;
    }
    if (rank == 0) {
      new_idx = v;
      break;
    }
    --rank;
  }
  const double z = rng.normal();
  const ProposalAudit audit = audit_birth(x, log_post_x, new_idx, z, target, ms);
  return resolve(x, log_post_x, audit, rng);
}

MoveResult death_move(const SplineState& x, double log_post_x,
                      const PosteriorTarget& target, const MoveSchedule& ms, Rng& rng) {
  const int n_knots = x.dim() - x.order();
  if (n_knots <= 0) return MoveResult{x, log_post_x, false};
  const int rank = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_knots)));
  const ProposalAudit audit = audit_death(x, log_post_x, rank, target, ms);
  return resolve(x, log_post_x, audit, rng);
}

double MoveStats::rate(MoveKind kind) const {
  const auto i = static_cast<std::size_t>(kind);
  return proposed[i] == 0 ? 0.0
                          : static_cast<double>(accepted[i]) /
                                static_cast<double>(proposed[i]);
}

void ChainConfig::validate() const {
  prior.validate();
  schedule.validate();
  if (schedule.order != prior.order || schedule.mean_dim != prior.mean_dim) {
    throw std::invalid_argument("ChainConfig: schedule and prior disagree on order or mean_dim");
  }
  if (iterations <= 0 || burn_in < 0 || burn_in >= iterations) {
    throw std::invalid_argument("ChainConfig: need iterations > burn_in >= 0");
  }
  if (thin < 1) throw std::invalid_argument("ChainConfig: thin must be >= 1");
  if (adapt_window < 1) throw std::invalid_argument("ChainConfig: adapt_window must be >= 1");
}

ChainResult run_chain(const ChainConfig& cfg, const PosteriorTarget& target,
                      const SplineState& init) {
  cfg.validate();
  if (!state_in_support(init, cfg.prior)) {
    throw std::invalid_argument("run_chain: initial state outside the prior support");
  }
  SplineState state = init;
  double log_post = target.log_posterior(state);
  if (!std::isfinite(log_post)) {
    throw std::invalid_argument("run_chain: initial state has non-finite log posterior");
  }

  Rng rng(cfg.seed);
  AdaptState adapt;
  adapt.sigma = cfg.sigma0 > 0.0 ? cfg.sigma0
                                 : (cfg.prior.upper - cfg.prior.lower) / 100.0;
  adapt.frozen = cfg.burn_in == 0;

  ChainResult result;
  const long retained = (cfg.iterations - cfg.burn_in) / cfg.thin;
  result.draws.reserve(static_cast<std::size_t>(std::max<long>(retained, 0)));

  for (long step = 1; step <= cfg.iterations; ++step) {
    const MoveKind kind = select_move(state.dim(), cfg.schedule, rng);
    MoveResult moved{state, log_post, false};
    switch (kind) {
      case MoveKind::perturb:
        moved = perturb_move(state, log_post, target, cfg.schedule, adapt.sigma, rng);
        break;
      case MoveKind::knot_move:
        moved = knot_move(state, log_post, target, cfg.schedule, rng);
        break;
      case MoveKind::birth:
        moved = birth_move(state, log_post, target, cfg.schedule, rng);
        break;
      case MoveKind::death:
        moved = death_move(state, log_post, target, cfg.schedule, rng);
        break;
    }
    state = std::move(moved.state);
    log_post = moved.log_post;

    MoveStats& stats = step > cfg.burn_in ? result.sampling_stats : result.burnin_stats;
    ++stats.proposed[static_cast<std::size_t>(kind)];
    if (moved.accepted) ++stats.accepted[static_cast<std::size_t>(kind)];

    if (kind == MoveKind::perturb && !adapt.frozen) {
      ++adapt.window_total;
      if (moved.accepted) ++adapt.window_accepts;
      if (adapt.window_total >= cfg.adapt_window) {
        adapt = adapt_sigma(adapt, cfg.adapt_window);
      }
    }
    if (step == cfg.burn_in) adapt.frozen = true;

    if (step > cfg.burn_in && (step - cfg.burn_in) % cfg.thin == 0) {
      result.draws.push_back(ChainDraw{step, state, kind, moved.accepted, log_post});
    }
  }
  result.final_sigma = adapt.sigma;
  return result;
}

SplineState flat_init(const PriorConfig& cfg, double rate) {
  cfg.validate();
  const double value = std::clamp(rate, cfg.lower, cfg.upper);
  return SplineState(cfg.order, cfg.period, {},
                     std::vector<double>(static_cast<std::size_t>(cfg.order), value));
}

}  // namespace freeknot
