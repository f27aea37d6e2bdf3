#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcgwe/game.hpp"

namespace gcgwe {

inline constexpr std::uint64_t kDefaultStateCap = 1'000'000;

class StateSpaceTooLargeError : public std::runtime_error {
 public:
  explicit StateSpaceTooLargeError(std::uint64_t count)
      : std::runtime_error("state space has " + std::to_string(count) +
                           " states, above the configured cap"),
        count_(count) {}
  /// Saturates at 2^64 - 1.
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_;
};

class NoPureNashError : public std::runtime_error {
 public:
  NoPureNashError() : std::runtime_error("game has no pure Nash equilibrium") {}
};

/// Number of states (product of available-set sizes), saturating.
std::uint64_t state_count(const Game& game);

/// All states in mixed-radix ascending order, player 1 the fastest digit,
/// each digit running over that player's available set ascending.
std::vector<State> enumerate_states(const Game& game, std::uint64_t cap = kDefaultStateCap);

/// Exactly the states passing is_pure_nash, in enumeration order.
std::vector<State> find_all_pne(const Game& game, std::uint64_t cap = kDefaultStateCap);

struct TransitionEdge {
  std::int64_t from = 0;
  std::int64_t to = 0;
  int player = 0;  // 0-based mover
  int resource = 0;
};

/// The better-response state-transition digraph: one node per state, one edge
/// per (state, player, strictly improving resource). Pure Nash equilibria are
/// exactly the sinks.
struct TransitionGraph {
  std::vector<State> states;
  std::vector<TransitionEdge> edges;
  std::vector<std::int64_t> pne_indices;
};

TransitionGraph build_transition_graph(const Game& game, std::uint64_t cap = kDefaultStateCap);

/// Finite improvement property: true iff the transition graph is acyclic.
bool has_fip(const Game& game, std::uint64_t cap = kDefaultStateCap);

struct ReachabilityReport {
  bool pne_reachable = false;
  /// Reachable states inside terminal strongly-connected components that are
  /// not equilibrium sinks; absent when every escape route leads to a PNE.
  std::optional<std::vector<std::int64_t>> trap;
};

/// Fate of better-response dynamics started at `initial`: can some PNE be
/// reached, and is there a reachable recurrent class with no way out.
ReachabilityReport reachability_analysis(const Game& game, const State& initial,
                                         std::uint64_t cap = kDefaultStateCap);

/// All states attaining the minimum total congestion. Requires a
/// resource-homogeneous game; on an undirected graph every returned state is
/// a pure Nash equilibrium.
std::vector<State> min_total_congestion_states(const Game& game,
                                               std::uint64_t cap = kDefaultStateCap);

/// The 3-coloring reduction: players on the vertices of the input graph,
/// spatial matrix equal to the adjacency matrix, three homogeneous resources
/// with f(x) = -x. Input must be a symmetric 0/1 matrix with zero diagonal.
Game coloring_reduction(const std::vector<std::vector<double>>& adjacency);

/// Among all pure Nash equilibria, one maximizing the total payoff (ties by
/// enumeration order). Throws NoPureNashError when none exists.
std::pair<State, double> optimal_pne_total_payoff(const Game& game,
                                                  std::uint64_t cap = kDefaultStateCap);

/// True iff no edge of the graph joins two same-resource players.
bool is_proper_coloring(const std::vector<std::vector<double>>& adjacency, const State& state);

}  // namespace gcgwe
