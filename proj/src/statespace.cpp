#include "gcgwe/statespace.hpp"

#include <algorithm>
#include <limits>

namespace gcgwe {

namespace {

// Advances the mixed-radix digit vector; returns false after the last state.
bool next_state(const Game& game, std::vector<int>& digits, State& state) {
  for (int n = 0; n < game.n_players(); ++n) {
    const auto& avail = game.available(n);
    if (++digits[n] < static_cast<int>(avail.size())) {
      state[n] = avail[digits[n]];
      return true;
    }
    digits[n] = 0;
    state[n] = avail[0];
  }
  return false;
}

void check_cap(const Game& game, std::uint64_t cap) {
  const std::uint64_t count = state_count(game);
  if (count > cap) throw StateSpaceTooLargeError(count);
}

}  // namespace

std::uint64_t state_count(const Game& game) {
  std::uint64_t count = 1;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  for (int n = 0; n < game.n_players(); ++n) {
    const std::uint64_t choices = game.available(n).size();
    if (count > kMax / choices) return kMax;  // saturate instead of overflowing
    count *= choices;
  }
  return count;
}

std::vector<State> enumerate_states(const Game& game, std::uint64_t cap) {
  check_cap(game, cap);
  const std::uint64_t count = state_count(game);

  std::vector<State> states;
  states.reserve(count);
  std::vector<int> digits(game.n_players(), 0);
  State state = game.initial_state();
  do {
    states.push_back(state);
  } while (next_state(game, digits, state));
  return states;
}

std::vector<State> find_all_pne(const Game& game, std::uint64_t cap) {
  check_cap(game, cap);
  std::vector<State> result;
  std::vector<int> digits(game.n_players(), 0);
  State state = game.initial_state();
  do {
    bool pne = true;
    for (int n = 0; n < game.n_players() && pne; ++n) {
      pne = !detail::player_has_better_response(game, state, n);
    }
    if (pne) result.push_back(state);
  } while (next_state(game, digits, state));
  return result;
}

TransitionGraph build_transition_graph(const Game& game, std::uint64_t cap) {
  check_cap(game, cap);
  TransitionGraph graph;
  graph.states = enumerate_states(game, cap);

  // Strides let us jump to the index of a single-player deviation directly.
  const int players = game.n_players();
  std::vector<std::int64_t> stride(players);
  std::int64_t acc = 1;
  for (int n = 0; n < players; ++n) {
    stride[n] = acc;
    acc *= static_cast<std::int64_t>(game.available(n).size());
  }

  for (std::int64_t i = 0; i < static_cast<std::int64_t>(graph.states.size()); ++i) {
    const State& state = graph.states[i];
    bool any_edge = false;
    for (int n = 0; n < players; ++n) {
      for (int r : better_response_set(game, state, n)) {
        const std::int64_t j =
            i + stride[n] * (game.resource_position(n, r) - game.resource_position(n, state[n]));
        graph.edges.push_back({i, j, n, r});
        any_edge = true;
      }
    }
    if (!any_edge) graph.pne_indices.push_back(i);
  }
  return graph;
}

bool has_fip(const Game& game, std::uint64_t cap) {
  const TransitionGraph graph = build_transition_graph(game, cap);
  const std::int64_t n = static_cast<std::int64_t>(graph.states.size());

  // Kahn peel on the transition graph; a full peel means acyclic.
  std::vector<std::int32_t> in_degree(n, 0);
  std::vector<std::int64_t> head(n, -1);
  std::vector<std::int64_t> next(graph.edges.size(), -1);
  for (std::int64_t e = 0; e < static_cast<std::int64_t>(graph.edges.size()); ++e) {
    ++in_degree[graph.edges[e].to];
    next[e] = head[graph.edges[e].from];
    head[graph.edges[e].from] = e;
  }
  std::vector<std::int64_t> queue;
  for (std::int64_t v = 0; v < n; ++v) {
    if (in_degree[v] == 0) queue.push_back(v);
  }
  std::int64_t peeled = 0;
  while (!queue.empty()) {
    const std::int64_t v = queue.back();
    queue.pop_back();
    ++peeled;
    for (std::int64_t e = head[v]; e >= 0; e = next[e]) {
      if (--in_degree[graph.edges[e].to] == 0) queue.push_back(graph.edges[e].to);
    }
  }
  return peeled == n;
}

namespace {

struct AdjacencyIndex {
  std::vector<std::int64_t> head;
  std::vector<std::int64_t> next;

  AdjacencyIndex(std::int64_t n_states, const std::vector<TransitionEdge>& edges)
      : head(n_states, -1), next(edges.size(), -1) {
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(edges.size()); ++e) {
      next[e] = head[edges[e].from];
      head[edges[e].from] = e;
    }
  }
};

// Iterative Tarjan restricted to the reachable set.
std::vector<std::int64_t> strongly_connected_components(const std::vector<TransitionEdge>& edges,
                                                        const AdjacencyIndex& adj,
                                                        const std::vector<char>& reachable,
                                                        std::int64_t n_states,
                                                        std::int64_t& n_components) {
  std::vector<std::int64_t> component(n_states, -1);
  std::vector<std::int64_t> index(n_states, -1);
  std::vector<std::int64_t> lowlink(n_states, 0);
  std::vector<char> on_stack(n_states, 0);
  std::vector<std::int64_t> stack;
  std::int64_t counter = 0;
  n_components = 0;

  struct Frame {
    std::int64_t v;
    std::int64_t edge;  // next edge id to explore
  };
  std::vector<Frame> call_stack;

  for (std::int64_t root = 0; root < n_states; ++root) {
    if (!reachable[root] || index[root] >= 0) continue;
    call_stack.push_back({root, adj.head[root]});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const std::int64_t v = frame.v;
      if (frame.edge >= 0) {
        const std::int64_t e = frame.edge;
        frame.edge = adj.next[e];
        const std::int64_t u = edges[e].to;
        if (index[u] < 0) {
          call_stack.push_back({u, adj.head[u]});
          index[u] = lowlink[u] = counter++;
          stack.push_back(u);
          on_stack[u] = 1;
        } else if (on_stack[u]) {
          lowlink[v] = std::min(lowlink[v], index[u]);
        }
        continue;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        lowlink[call_stack.back().v] = std::min(lowlink[call_stack.back().v], lowlink[v]);
      }
      if (lowlink[v] == index[v]) {
        for (;;) {
          const std::int64_t u = stack.back();
          stack.pop_back();
          on_stack[u] = 0;
          component[u] = n_components;
          if (u == v) break;
        }
        ++n_components;
      }
    }
  }
  return component;
}

}  // namespace

ReachabilityReport reachability_analysis(const Game& game, const State& initial,
                                         std::uint64_t cap) {
  game.validate_state(initial);
  const TransitionGraph graph = build_transition_graph(game, cap);
  const std::int64_t n = static_cast<std::int64_t>(graph.states.size());
  const AdjacencyIndex adj(n, graph.edges);

  std::int64_t start = 0;
  {
    std::int64_t idx = 0, s = 1;
    for (int p = 0; p < game.n_players(); ++p) {
      idx += s * game.resource_position(p, initial[p]);
      s *= static_cast<std::int64_t>(game.available(p).size());
    }
    start = idx;
  }

  std::vector<char> reachable(n, 0);
  std::vector<std::int64_t> frontier{start};
  reachable[start] = 1;
  while (!frontier.empty()) {
    const std::int64_t v = frontier.back();
    frontier.pop_back();
    for (std::int64_t e = adj.head[v]; e >= 0; e = adj.next[e]) {
      const std::int64_t u = graph.edges[e].to;
      if (!reachable[u]) {
        reachable[u] = 1;
        frontier.push_back(u);
      }
    }
  }

  ReachabilityReport report;
  std::vector<char> is_pne_state(n, 0);
  for (std::int64_t i : graph.pne_indices) is_pne_state[i] = 1;
  for (std::int64_t v = 0; v < n; ++v) {
    if (reachable[v] && is_pne_state[v]) {
      report.pne_reachable = true;
      break;
    }
  }

  std::int64_t n_components = 0;
  const std::vector<std::int64_t> component =
      strongly_connected_components(graph.edges, adj, reachable, n, n_components);

  // A component is terminal when no edge leaves it; single PNE sinks are the
  // good absorbing states, everything else terminal is a trap.
  std::vector<char> terminal(n_components, 1);
  std::vector<std::int64_t> component_size(n_components, 0);
  for (std::int64_t v = 0; v < n; ++v) {
    if (component[v] >= 0) ++component_size[component[v]];
  }
  for (const TransitionEdge& e : graph.edges) {
    if (component[e.from] >= 0 && component[e.to] >= 0 && component[e.from] != component[e.to]) {
      terminal[component[e.from]] = 0;
    }
  }

  std::vector<std::int64_t> trap_states;
  for (std::int64_t v = 0; v < n; ++v) {
    const std::int64_t c = component[v];
    if (c >= 0 && terminal[c] && !(component_size[c] == 1 && is_pne_state[v])) {
      trap_states.push_back(v);
    }
  }
  if (!trap_states.empty()) report.trap = std::move(trap_states);
  return report;
}

std::vector<State> min_total_congestion_states(const Game& game, std::uint64_t cap) {
  if (!game.resource_homogeneous()) {
    throw std::invalid_argument(
        "min_total_congestion_states: game must be resource-homogeneous");
  }
  check_cap(game, cap);

  std::vector<State> best;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<int> digits(game.n_players(), 0);
  State state = game.initial_state();
  do {
    const double c = total_congestion(game, state);
    if (c < best_value) {
      best_value = c;
      best.clear();
      best.push_back(state);
    } else if (c == best_value) {
      best.push_back(state);
    }
  } while (next_state(game, digits, state));
  return best;
}

Game coloring_reduction(const std::vector<std::vector<double>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  if (n < 1) throw std::invalid_argument("coloring_reduction: empty graph");
  std::vector<double> row_major;
  row_major.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(adjacency[i].size()) != n) {
      throw std::invalid_argument("coloring_reduction: adjacency matrix must be square");
    }
    for (int j = 0; j < n; ++j) {
      const double v = adjacency[i][j];
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("coloring_reduction: adjacency entries must be 0 or 1");
      }
      if (adjacency[i][j] != adjacency[j][i]) {
        throw std::invalid_argument("coloring_reduction: adjacency matrix must be symmetric");
      }
      if (i == j && v != 0.0) {
        throw std::invalid_argument("coloring_reduction: no self-loops allowed");
      }
      row_major.push_back(v);
    }
  }
  SpatialMatrix spatial(n, std::move(row_major));
  std::vector<std::vector<PayoffSpec>> payoffs(n, std::vector<PayoffSpec>(3, NegLinear{}));
  return Game::uniform_availability(std::move(spatial), 3, std::move(payoffs));
}

std::pair<State, double> optimal_pne_total_payoff(const Game& game, std::uint64_t cap) {
  check_cap(game, cap);

  bool found = false;
  State best_state;
  double best_total = -std::numeric_limits<double>::infinity();
  std::vector<int> digits(game.n_players(), 0);
  State state = game.initial_state();
  do {
    bool pne = true;
    for (int n = 0; n < game.n_players() && pne; ++n) {
      pne = !detail::player_has_better_response(game, state, n);
    }
    if (!pne) continue;
    double total = 0.0;
    for (int n = 0; n < game.n_players(); ++n) {
      const double x = detail::congestion_on_unchecked(game, state, n, state[n]);
      total += evaluate(game.payoff_spec(n, state[n]), x);
    }
    if (!found || total > best_total) {
      found = true;
      best_total = total;
      best_state = state;
    }
  } while (next_state(game, digits, state));

  if (!found) throw NoPureNashError();
  return {best_state, best_total};
}

bool is_proper_coloring(const std::vector<std::vector<double>>& adjacency, const State& state) {
  const int n = static_cast<int>(adjacency.size());
  if (static_cast<int>(state.size()) != n) {
    throw std::invalid_argument("is_proper_coloring: state and adjacency dimensions differ");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adjacency[i][j] != 0.0 && state[i] == state[j]) return false;
    }
  }
  return true;
}

}  // namespace gcgwe
