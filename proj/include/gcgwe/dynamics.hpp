#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gcgwe/game.hpp"
#include "gcgwe/rng.hpp"

namespace gcgwe {

/// Parameters of the asynchronous random better-response process: one player
/// updates per time slot, chosen uniformly among players that can improve,
/// then a resource uniformly among that player's improving resources.
struct UpdateRule {
  std::uint64_t seed = 0;
  int max_slots = 10000;
  bool record_trajectory = false;
};

struct TrajectoryEntry {
  int slot = 0;    // 1-based time slot of this update
  int player = 0;  // 0-based
  int from = 0;
  int to = 0;
  double congestion_before = 0.0;  // the mover's congestion level
  double congestion_after = 0.0;
  double total_congestion = 0.0;  // after the update
  std::optional<double> potential_before;  // two-resource potential V, when defined
  std::optional<double> potential_after;
};

struct RunOutcome {
  bool converged = false;
  State final_state;
  int slots = 0;  // updates performed; for timeouts this equals max_slots
  std::vector<TrajectoryEntry> trajectory;
};

struct Step {
  int player;
  int from;
  int to;
};

/// Performs one random better-response update in place. Returns nothing when
/// the state is already a pure Nash equilibrium. Draw protocol: improvable
/// players collected in ascending index order, one uniform draw; improving
/// resources ascending, one uniform draw.
std::optional<Step> step(const Game& game, State& state, Rng& rng);

/// Runs the update rule from `initial` until equilibrium or rule.max_slots.
RunOutcome run(const Game& game, State initial, const UpdateRule& rule);

/// Runs from the all-lowest-resource state (all players on resource 1 under
/// full availability).
RunOutcome run(const Game& game, const UpdateRule& rule);

/// Per-player congestion tolerance thresholds for two-resource games; T[n] is
/// the largest congestion on resource 2 at which player n still prefers
/// resource 2. Values: -1 (resource 1 always preferred), 1 + sum_m S(m,n)
/// (resource 2 always preferred), otherwise sum_m S(m,n) - x* where x* is the
/// unique root of f_n^1(x) - f_n^2(sum_m S(m,n) - x), found by bisection to
/// absolute tolerance 1e-12.
using ThresholdVector = std::vector<double>;

/// Requires exactly two resources, both available to every player.
ThresholdVector compute_thresholds(const Game& game);

/// Potential for undirected two-resource games:
/// V(X) = 1/2 sum_m sum_m' S(m',m)(X_m - 1)(X_m' - 1) - sum_m T_m (X_m - 1).
/// Strictly decreases along every better-response update.
double potential_two_resource(const Game& game, const State& state,
                              const ThresholdVector& thresholds);

/// For homogeneous undirected games, a unilateral move by player n satisfies
/// C(after) - C(before) = 2 (c_n(after) - c_n(before)). Returns whether the
/// identity holds to absolute tolerance 1e-9. The two states must agree on
/// every player other than n.
bool congestion_delta_identity_check(const Game& game, const State& before, const State& after,
                                     int n);

}  // namespace gcgwe
