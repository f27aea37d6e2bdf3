#pragma once

#include <stdexcept>
#include <vector>

#include "gcgwe/game.hpp"

namespace gcgwe {

/// Permutation of player indices such that no edge of D(S) points from a
/// later position to an earlier one.
struct TopologicalOrder {
  std::vector<int> order;
};

class CycleDetectedError : public std::runtime_error {
 public:
  explicit CycleDetectedError(std::vector<int> witness);
  /// Vertices of one directed cycle, 0-based, in traversal order.
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

class NotATreeError : public std::runtime_error {
 public:
  NotATreeError() : std::runtime_error("solve_directed_tree: underlying graph is not a forest") {}
};

/// Kahn's algorithm with a min-index frontier, so the returned order is the
/// lexicographically smallest one. Throws CycleDetectedError with a witness
/// cycle when D(S) is cyclic.
TopologicalOrder topological_sort(const SpatialMatrix& spatial);

/// Resource maximizing player n's payoff against the rest of `state`; ties
/// broken toward the smallest resource index. Homogeneous games minimize
/// congestion instead, same tie-break.
int best_response(const Game& game, const State& state, int n);

/// Pure Nash equilibrium for a game on a directed acyclic graph: one best
/// response per player along a topological order.
State solve_dag(const Game& game);

/// Pure Nash equilibrium for a game whose underlying undirected graph is a
/// forest, via leaf removal with payoff modification. Connected components
/// are solved independently. Throws NotATreeError otherwise.
State solve_directed_tree(const Game& game);

}  // namespace gcgwe
