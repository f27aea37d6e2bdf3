#pragma once

#include <vector>

namespace gcgwe {

/// N x N nonnegative weight matrix. Entry (m, n) is the congestion player m
/// causes player n when they share a resource; the diagonal is zero.
///
/// The positive entries induce the directed congestion graph D(S).
class SpatialMatrix {
 public:
  /// All-zero matrix for n players.
  explicit SpatialMatrix(int n_players);

  /// Row-major construction; throws std::invalid_argument on a negative or
  /// non-finite entry, a nonzero diagonal, or a size mismatch.
  SpatialMatrix(int n_players, std::vector<double> row_major);

  int n_players() const { return n_; }

  /// Weight of the directed edge from -> to (0-based players).
  double operator()(int from, int to) const { return w_[static_cast<std::size_t>(from) * n_ + to]; }

  void set(int from, int to, double weight);

  /// Column sum: the maximum congestion player n can ever experience.
  double in_weight_sum(int n) const;

  bool operator==(const SpatialMatrix&) const = default;

 private:
  int n_;
  std::vector<double> w_;  // row-major
};

struct StructureReport {
  bool is_undirected = false;     // S equals its transpose exactly
  bool is_dag = false;            // D(S) has no directed cycle
  bool is_directed_tree = false;  // underlying undirected graph is a tree
};

/// Structural classification used to pick a solver or a potential function.
StructureReport classify_structure(const SpatialMatrix& spatial);

}  // namespace gcgwe
