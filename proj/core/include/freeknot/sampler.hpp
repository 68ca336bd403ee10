#pragma once

// Reversible-jump Metropolis-Hastings sampler over (dimension, knots,
// coefficients): coefficient perturbation, single-knot moves on the grid,
// and trans-dimensional birth/death moves with exact acceptance ratios.

#include <array>
#include <cstdint>
#include <vector>

#include "freeknot/data.hpp"
#include "freeknot/model.hpp"
#include "freeknot/prior.hpp"

namespace freeknot {

class Rng;

enum class MoveKind : int { perturb = 0, knot_move = 1, birth = 2, death = 3 };

const char* move_name(MoveKind kind);

// Move selection probabilities. Perturb and knot-move probabilities are
// fixed; the remaining mass 1 - p_a - p_b is split between birth and death
// so that births dominate below the prior mean dimension and deaths above:
//   p_c(j) = (1 - p_a - p_b) 2^{-(j-q)/(mu-q)},  p_d(j) = (1 - p_a - p_b) - p_c(j).
// In particular p_d(q) = 0 and p_c(mu) = p_d(mu) at integer mu.
struct MoveSchedule {
  double p_a = 0.4;
  double p_b = 0.2;
  int order = 4;
  double mean_dim = 10.0;

  void validate() const;
  double p_c(int j) const;
  double p_d(int j) const;
};

MoveKind select_move(int j, const MoveSchedule& ms, Rng& rng);

// Random-walk scale with windowed adaptation toward a 23% acceptance rate.
// Once frozen (end of burn-in) the scale never changes.
struct AdaptState {
  double sigma = 1.0;
  long window_accepts = 0;
  long window_total = 0;
  bool frozen = false;
};

// Applies one window update: sigma is multiplied by exp(rate - 0.23),
// clipped to [0.5, 2.0] per update, and the window counters reset.
AdaptState adapt_sigma(AdaptState adapt, int window);

// The unnormalized posterior: spline prior plus one of the two likelihoods.
// With neither data source attached the likelihood is identically zero and
// the chain samples the prior.
struct PosteriorTarget {
  PriorConfig prior;
  const BinnedCounts* counts = nullptr;
  const EventPath* events = nullptr;

  double log_likelihood(const SplineState& state) const;
  double log_posterior(const SplineState& state) const;
};

// ---------------------------------------------------------------------------
// Deterministic proposal audits. Each audit maps the current state and the
// move's random inputs to the proposed state together with the exact
// log-probabilities of generating that proposal (forward) and of generating
// the reverse proposal from the proposed state. The acceptance ratio is
//   log_accept = [log pi(y) + log_reverse] - [log pi(x) + log_forward],
// which makes the pairwise balance relation directly checkable in tests.
// ---------------------------------------------------------------------------

struct ProposalAudit {
  SplineState state;            // proposed state (current state when infeasible)
  double log_post_state = 0.0;  // log posterior of the proposed state
  double log_forward = 0.0;     // includes the move-selection probability
  double log_reverse = 0.0;
  double log_accept = 0.0;
  bool feasible = true;         // false: impossible proposal, counted as rejected
};

// theta' = theta + sigma * u with u standard normal. Symmetric, so the
// ratio reduces to the posterior ratio.
ProposalAudit audit_perturb(const SplineState& x, double log_post_x,
                            std::span<const double> u, double sigma,
                            const PosteriorTarget& target, const MoveSchedule& ms);

// Moves the knot of the given rank one grid position in `direction`
// (-1 or +1). Infeasible when the neighboring position is occupied or off
// the grid. The position choice probability (1/2) is symmetric between the
// two directions of an executed move.
ProposalAudit audit_knot_move(const SplineState& x, double log_post_x,
                              int knot_rank, int direction,
                              const PosteriorTarget& target, const MoveSchedule& ms);

// Birth: re-express the current knots on the dimension-(j+1) grid by
// rounding each to the nearest destination index (ties down), insert a new
// knot at `new_knot_idx` (a free destination position), and insert the seed
// coefficient u = seed_mean + z at the coefficient slot determined by the
// knot's position within its bracketing interval. The insertion map has
// unit Jacobian.
ProposalAudit audit_birth(const SplineState& x, double log_post_x,
                          long new_knot_idx, double z,
                          const PosteriorTarget& target, const MoveSchedule& ms);

// Death: exact reverse of birth. Removes the knot of the given rank,
// deletes the coefficient slot the reverse birth would have inserted, and
// re-rounds the remaining knots down to the dimension-(j-1) grid.
// Infeasible when the down-rounding collides or when the reverse birth
// would not reproduce the current knots (round-trip check), both of which
// correspond to reverse proposals of probability zero.
ProposalAudit audit_death(const SplineState& x, double log_post_x,
                          int knot_rank,
                          const PosteriorTarget& target, const MoveSchedule& ms);

// --- grid geometry helpers used by the audits (exact integer arithmetic) ---

// Nearest index on a grid with to_size interior positions for index idx on
// a grid with from_size positions; ties round down. May return 0 when
// shrinking, which is not a valid interior position.
long reround_index(long idx, long from_size, long to_size);

// Insertion geometry for a new knot at grid index k among `existing` sorted
// occupied indices on a grid with `grid` positions: the knot rank the new
// knot will take and the coefficient slot
//   m = rank + min(floor((q+1)(k - left)/(right - left)), q)
// with left/right the bracketing occupied indices (or the boundary).
struct Insertion {
  int knot_rank;
  int coef_index;
};
Insertion insertion_point(int order, long k, const std::vector<long>& existing, long grid);

// Mean of the surviving coefficients weighted by the overlap of their
// destination-basis functions with the inserted one (renormalized so a
// constant coefficient vector keeps its value).
double seed_mean(const KnotSet& dest_knots, int coef_index,
                 std::span<const double> theta);

// --- randomized moves -------------------------------------------------------

struct MoveResult {
  SplineState state;
  double log_post;
  bool accepted;
};

MoveResult perturb_move(const SplineState& x, double log_post_x,
                        const PosteriorTarget& target, const MoveSchedule& ms,
                        double sigma, Rng& rng);
MoveResult knot_move(const SplineState& x, double log_post_x,
                     const PosteriorTarget& target, const MoveSchedule& ms, Rng& rng);
MoveResult birth_move(const SplineState& x, double log_post_x,
                      const PosteriorTarget& target, const MoveSchedule& ms, Rng& rng);
MoveResult death_move(const SplineState& x, double log_post_x,
                      const PosteriorTarget& target, const MoveSchedule& ms, Rng& rng);

// --- chain driving ----------------------------------------------------------

struct ChainDraw {
  long iteration;
  SplineState state;
  MoveKind move;
  bool accepted;
  double log_post;
};

struct MoveStats {
  std::array<long, 4> proposed{};
  std::array<long, 4> accepted{};
  double rate(MoveKind kind) const;
};

struct ChainConfig {
  PriorConfig prior;
  MoveSchedule schedule;
  long iterations = 0;
  long burn_in = 0;
  long thin = 1;
  std::uint64_t seed = 0;
  double sigma0 = 0.0;    // <= 0 selects (upper - lower) / 100
  int adapt_window = 50;  // perturb proposals per adaptation window

  void validate() const;
};

struct ChainResult {
  std::vector<ChainDraw> draws;
  MoveStats burnin_stats;
  MoveStats sampling_stats;  // post burn-in
  double final_sigma = 0.0;
};

// Runs one chain: deterministic given the seed, retaining every thin-th
// post-burn-in draw. The adaptation scale freezes at the end of burn-in.
ChainResult run_chain(const ChainConfig& cfg, const PosteriorTarget& target,
                      const SplineState& init);

// Minimal starting point: dimension q, no interior knots, constant
// coefficients clamped into the prior support.
SplineState flat_init(const PriorConfig& cfg, double rate);

}  // namespace freeknot
