#include "gcgwe/spatial_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gcgwe {

SpatialMatrix::SpatialMatrix(int n_players) : n_(n_players) {
  if (n_players < 1) throw std::invalid_argument("SpatialMatrix: need at least one player");
  w_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
}

SpatialMatrix::SpatialMatrix(int n_players, std::vector<double> row_major)
    : n_(n_players), w_(std::move(row_major)) {
  if (n_players < 1) throw std::invalid_argument("SpatialMatrix: need at least one player");
  if (w_.size() != static_cast<std::size_t>(n_) * n_) {
    throw std::invalid_argument("SpatialMatrix: expected N*N entries");
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("SpatialMatrix: entries must be finite and nonnegative");
      }
      if (i == j && v != 0.0) {
        throw std::invalid_argument("SpatialMatrix: diagonal must be zero");
      }
    }
  }
}

void SpatialMatrix::set(int from, int to, double weight) {
  if (from == to && weight != 0.0) {
    throw std::invalid_argument("SpatialMatrix: diagonal must be zero");
  }
  if (!std::isfinite(weight) || weight < 0.0) {
    throw std::invalid_argument("SpatialMatrix: entries must be finite and nonnegative");
  }
  w_[static_cast<std::size_t>(from) * n_ + to] = weight;
}

double SpatialMatrix::in_weight_sum(int n) const {
  double sum = 0.0;
  for (int m = 0; m < n_; ++m) sum += (*this)(m, n);
  return sum;
}

namespace {

bool has_directed_cycle(const SpatialMatrix& s) {
  const int n = s.n_players();
  // Iterative DFS with colors: 0 white, 1 on stack, 2 done.
  std::vector<int> color(n, 0);
  std::vector<std::pair<int, int>> stack;  // (vertex, next successor to try)
  for (int root = 0; root < n; ++root) {
    if (color[root] != 0) continue;
    stack.push_back({root, 0});
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      bool descended = false;
      for (int u = next; u < n; ++u) {
        if (s(v, u) <= 0.0) continue;
        if (color[u] == 1) return true;
        if (color[u] == 0) {
          next = u + 1;
          stack.push_back({u, 0});
          color[u] = 1;
          descended = true;
          break;
        }
      }
      if (!descended) {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

StructureReport classify_structure(const SpatialMatrix& spatial) {
  const int n = spatial.n_players();
  StructureReport report;

  report.is_undirected = true;
  for (int i = 0; i < n && report.is_undirected; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (spatial(i, j) != spatial(j, i)) {
        report.is_undirected = false;
        break;
      }
    }
  }

  report.is_dag = !has_directed_cycle(spatial);

  // Underlying undirected simple graph: edge {i,j} iff either direction has
  // positive weight. A tree is connected with exactly n-1 edges.
  int edges = 0;
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (spatial(i, j) > 0.0 || spatial(j, i) > 0.0) {
        ++edges;
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  std::vector<char> seen(n, 0);
  std::vector<int> frontier{0};
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        frontier.push_back(u);
      }
    }
  }
  report.is_directed_tree = (reached == n) && (edges == n - 1);
  return report;
}

}  // namespace gcgwe
