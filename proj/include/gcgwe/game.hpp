#pragma once

#include <vector>

#include "gcgwe/payoff.hpp"
#include "gcgwe/spatial_matrix.hpp"

namespace gcgwe {

/// One resource choice per player. Resources are numbered 1..R; players are
/// 0-based in code and 1-based in every file format.
using State = std::vector<int>;

/// A graphical congestion game with weighted edges: players on the vertices
/// of D(S), each picking one resource from its available set, with payoff a
/// strictly decreasing function of the weighted congestion it experiences.
///
/// Immutable after construction and safe to share across threads.
class Game {
 public:
  /// available[n] lists player n's resources (values in 1..n_resources);
  /// payoffs[n][k] is the payoff spec for available[n][k]. Available sets are
  /// stored sorted ascending. Throws std::invalid_argument on an empty
  /// available set, an out-of-range resource, a duplicate, a payoff table
  /// whose shape does not match, or an invalid payoff spec.
  Game(SpatialMatrix spatial, int n_resources, std::vector<std::vector<int>> available,
       std::vector<std::vector<PayoffSpec>> payoffs);

  /// Full availability: every player may use every resource.
  static Game uniform_availability(SpatialMatrix spatial, int n_resources,
                                   std::vector<std::vector<PayoffSpec>> payoffs_per_player);

  int n_players() const { return spatial_.n_players(); }
  int n_resources() const { return n_resources_; }
  const SpatialMatrix& spatial() const { return spatial_; }
  const std::vector<int>& available(int n) const { return available_[n]; }

  /// Payoff spec of player n for resource r (r must be available to n).
  const PayoffSpec& payoff_spec(int n, int r) const;

  /// True iff every player's payoff specs are structurally identical across
  /// its available resources. Cached at construction.
  bool resource_homogeneous() const { return homogeneous_; }

  /// Position of resource r within player n's available list, or -1.
  int resource_position(int n, int r) const;

  /// Each player on its lowest-numbered available resource (resource 1 under
  /// full availability).
  State initial_state() const;

  /// Throws std::invalid_argument / std::out_of_range when the state does not
  /// fit this game.
  void validate_state(const State& state) const;
  void validate_player(int n) const;

 private:
  SpatialMatrix spatial_;
  int n_resources_;
  std::vector<std::vector<int>> available_;
  std::vector<std::vector<PayoffSpec>> payoffs_;
  bool homogeneous_;
};

/// Congestion player n experiences in `state`: sum over same-resource players
/// m of S(m, n), accumulated in ascending m order.
double congestion_level(const Game& game, const State& state, int n);

/// Congestion player n would experience on resource r, holding everyone else
/// fixed at `state`.
double congestion_on(const Game& game, const State& state, int n, int r);

/// Player n's payoff in `state` (extended real; Reciprocal at zero congestion
/// yields +infinity).
double payoff(const Game& game, const State& state, int n);

/// Strict payoff improvement test for a unilateral switch of player n to r.
/// Resource-homogeneous games compare congestion levels instead of payoffs,
/// which keeps the Reciprocal +infinity sentinel out of the arithmetic.
bool is_better_response(const Game& game, const State& state, int n, int r);

/// All strictly improving resources for player n, ascending.
std::vector<int> better_response_set(const Game& game, const State& state, int n);

/// True iff no player has any better response.
bool is_pure_nash(const Game& game, const State& state);

/// Sum of congestion levels over all players, n outer / m inner, ascending.
double total_congestion(const Game& game, const State& state);

struct CongestionBound {
  double congestion = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

/// Per-player check of the equilibrium congestion bound
/// (sum_m S(m,n)) / |R_n| for resource-homogeneous games. The state must be a
/// pure Nash equilibrium; tolerance 1e-9 absorbs float accumulation.
std::vector<CongestionBound> check_equilibrium_congestion_bound(const Game& game,
                                                                const State& state);

namespace detail {
// Unchecked fast paths shared with the state-space oracle and dynamics.
double congestion_on_unchecked(const Game& game, const State& state, int n, int r);
bool player_has_better_response(const Game& game, const State& state, int n);
}  // namespace detail

}  // namespace gcgwe
