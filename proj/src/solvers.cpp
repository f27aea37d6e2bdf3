#include "gcgwe/solvers.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <utility>

namespace gcgwe {

namespace {

std::string describe_cycle(const std::vector<int>& cycle) {
  std::ostringstream out;
  out << "topological_sort: directed cycle detected:";
  for (int v : cycle) out << ' ' << (v + 1);
  return out.str();
}

}  // namespace

CycleDetectedError::CycleDetectedError(std::vector<int> witness)
    : std::runtime_error(describe_cycle(witness)), cycle_(std::move(witness)) {}

TopologicalOrder topological_sort(const SpatialMatrix& spatial) {
  const int n = spatial.n_players();
  std::vector<int> in_degree(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (spatial(i, j) > 0.0) ++in_degree[j];
    }
  }

  std::priority_queue<int, std::vector<int>, std::greater<int>> frontier;
  for (int v = 0; v < n; ++v) {
    if (in_degree[v] == 0) frontier.push(v);
  }

  TopologicalOrder result;
  result.order.reserve(n);
  while (!frontier.empty()) {
    const int v = frontier.top();
    frontier.pop();
    result.order.push_back(v);
    for (int u = 0; u < n; ++u) {
      if (spatial(v, u) > 0.0 && --in_degree[u] == 0) frontier.push(u);
    }
  }

  if (static_cast<int>(result.order.size()) == n) return result;

  // The unprocessed vertices all lie on or feed cycles; walk successors with
  // positive in-degree until a vertex repeats.
  std::vector<char> remaining(n, 0);
  for (int v = 0; v < n; ++v) remaining[v] = (in_degree[v] > 0);
  int start = 0;
  while (!remaining[start]) ++start;
  std::vector<int> path;
  std::vector<int> visited_at(n, -1);
  int v = start;
  while (visited_at[v] < 0) {
    visited_at[v] = static_cast<int>(path.size());
    path.push_back(v);
    for (int u = 0; u < n; ++u) {
      if (remaining[u] && spatial(v, u) > 0.0) {
        v = u;
        break;
      }
    }
  }
  std::vector<int> cycle(path.begin() + visited_at[v], path.end());
  throw CycleDetectedError(std::move(cycle));
}

namespace {

// Base game plus accumulated congestion shifts on (player, resource) pairs.
// Evaluating a shifted payoff at x means evaluating the original at
// x + shift, which preserves strict decrease. Used by the tree solver to
// represent the modified game g_n^r(x) = f_n^r(x + S(leaf, n)) without
// touching the immutable Game.
struct ShiftedGame {
  const Game* base;
  std::map<std::pair<int, int>, double> shift;

  double shift_for(int n, int r) const {
    const auto it = shift.find({n, r});
    return it == shift.end() ? 0.0 : it->second;
  }

  double payoff_at(int n, int r, double congestion) const {
    return evaluate(base->payoff_spec(n, r), congestion + shift_for(n, r));
  }
};

// Best response of `n` against `state`, considering only players in `active`
// (others are treated as absent). Tie-break: smallest resource index.
int best_response_on(const ShiftedGame& g, const std::vector<char>& active, const State& state,
                     int n) {
  const Game& game = *g.base;
  int best = -1;
  double best_payoff = 0.0;
  for (int r : game.available(n)) {
    double cong = 0.0;
    for (int m = 0; m < game.n_players(); ++m) {
      if (active[m] && state[m] == r) cong += game.spatial()(m, n);
    }
    const double p = g.payoff_at(n, r, cong);
    if (best < 0 || p > best_payoff) {
      best = r;
      best_payoff = p;
    }
  }
  return best;
}

bool has_better_response_on(const ShiftedGame& g, const std::vector<char>& active,
                            const State& state, int n) {
  const Game& game = *g.base;
  double cong_cur = 0.0;
  for (int m = 0; m < game.n_players(); ++m) {
    if (active[m] && state[m] == state[n]) cong_cur += game.spatial()(m, n);
  }
  const double payoff_cur = g.payoff_at(n, state[n], cong_cur);
  for (int r : game.available(n)) {
    if (r == state[n]) continue;
    double cong = 0.0;
    for (int m = 0; m < game.n_players(); ++m) {
      if (active[m] && state[m] == r) cong += game.spatial()(m, n);
    }
    if (g.payoff_at(n, r, cong) > payoff_cur) return true;
  }
  return false;
}

// Undirected degree within the active set.
int active_degree(const SpatialMatrix& s, const std::vector<char>& active, int v,
                  int* neighbor_out) {
  int degree = 0;
  for (int u = 0; u < s.n_players(); ++u) {
    if (u == v || !active[u]) continue;
    if (s(u, v) > 0.0 || s(v, u) > 0.0) {
      ++degree;
      if (neighbor_out) *neighbor_out = u;
    }
  }
  return degree;
}

// Leaf-removal induction on the active vertex set. `state` is filled in for
// active players; inactive entries are ignored.
void solve_tree_component(ShiftedGame g, std::vector<char> active, int active_count,
                          State& state) {
  const Game& game = *g.base;
  const SpatialMatrix& s = game.spatial();

  if (active_count == 1) {
    for (int v = 0; v < game.n_players(); ++v) {
      if (active[v]) {
        state[v] = best_response_on(g, active, state, v);
        return;
      }
    }
  }

  // Smallest-index leaf and its unique neighbor.
  int leaf = -1, neighbor = -1;
  for (int v = 0; v < game.n_players() && leaf < 0; ++v) {
    if (!active[v]) continue;
    int nb = -1;
    if (active_degree(s, active, v, &nb) == 1) {
      leaf = v;
      neighbor = nb;
    }
  }

  std::vector<char> sub = active;
  sub[leaf] = 0;
  solve_tree_component(g, sub, active_count - 1, state);

  // The leaf best-responds to the subtree equilibrium.
  state[leaf] = best_response_on(g, active, state, leaf);
  if (!has_better_response_on(g, active, state, neighbor)) {
    return;  // neighbor still satisfied, whole component at equilibrium
  }

  // Only possible when the leaf grabbed the neighbor's resource. Re-solve the
  // subtree with the neighbor's payoff for that resource shifted by the
  // leaf's congestion contribution, and pin the leaf there.
  const int r = state[leaf];
  ShiftedGame modified = std::move(g);
  modified.shift[{neighbor, r}] += s(leaf, neighbor);
  solve_tree_component(std::move(modified), sub, active_count - 1, state);
  state[leaf] = r;
}

}  // namespace

int best_response(const Game& game, const State& state, int n) {
  game.validate_player(n);
  game.validate_state(state);

  const auto& avail = game.available(n);
  if (game.resource_homogeneous()) {
    int best = avail.front();
    double best_cong = detail::congestion_on_unchecked(game, state, n, best);
    for (std::size_t i = 1; i < avail.size(); ++i) {
      const double cong = detail::congestion_on_unchecked(game, state, n, avail[i]);
      if (cong < best_cong) {
        best = avail[i];
        best_cong = cong;
      }
    }
    return best;
  }

  int best = avail.front();
  double best_payoff =
      evaluate(game.payoff_spec(n, best), detail::congestion_on_unchecked(game, state, n, best));
  for (std::size_t i = 1; i < avail.size(); ++i) {
    const int r = avail[i];
    const double p =
        evaluate(game.payoff_spec(n, r), detail::congestion_on_unchecked(game, state, n, r));
    if (p > best_payoff) {
      best = r;
      best_payoff = p;
    }
  }
  return best;
}

State solve_dag(const Game& game) {
  const TopologicalOrder topo = topological_sort(game.spatial());
  State state = game.initial_state();
  // Later players never congest earlier ones, so one pass suffices.
  for (int player : topo.order) {
    state[player] = best_response(game, state, player);
  }
  return state;
}

State solve_directed_tree(const Game& game) {
  const int n = game.n_players();
  const SpatialMatrix& s = game.spatial();

  // Connected components of the underlying undirected graph; each must be a
  // tree (acyclic), i.e. the whole graph is a forest.
  std::vector<int> component(n, -1);
  int n_components = 0;
  int undirected_edges = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (s(i, j) > 0.0 || s(j, i) > 0.0) ++undirected_edges;
    }
  }
  for (int root = 0; root < n; ++root) {
    if (component[root] >= 0) continue;
    const int id = n_components++;
    std::vector<int> stack{root};
    component[root] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < n; ++u) {
        if (u == v || component[u] >= 0) continue;
        if (s(u, v) > 0.0 || s(v, u) > 0.0) {
          component[u] = id;
          stack.push_back(u);
        }
      }
    }
  }
  if (undirected_edges != n - n_components) throw NotATreeError();

  State state = game.initial_state();
  for (int c = 0; c < n_components; ++c) {
    std::vector<char> active(n, 0);
    int count = 0;
    for (int v = 0; v < n; ++v) {
      if (component[v] == c) {
        active[v] = 1;
        ++count;
      }
    }
    solve_tree_component(ShiftedGame{&game, {}}, std::move(active), count, state);
  }
  return state;
}

}  // namespace gcgwe
