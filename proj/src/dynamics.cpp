#include "gcgwe/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gcgwe {

std::optional<Step> step(const Game& game, State& state, Rng& rng) {
  game.validate_state(state);
  const int players = game.n_players();

  std::vector<int> improvable;
  for (int n = 0; n < players; ++n) {
    if (detail::player_has_better_response(game, state, n)) improvable.push_back(n);
  }
  if (improvable.empty()) return std::nullopt;

  const int mover = improvable[rng.below(improvable.size())];
  const std::vector<int> choices = better_response_set(game, state, mover);
  const int target = choices[rng.below(choices.size())];

  Step result{mover, state[mover], target};
  state[mover] = target;
  return result;
}

namespace {

bool potential_applicable(const Game& game) {
  if (game.n_resources() != 2) return false;
  for (int n = 0; n < game.n_players(); ++n) {
    if (game.available(n).size() != 2) return false;
  }
  return classify_structure(game.spatial()).is_undirected;
}

}  // namespace

RunOutcome run(const Game& game, State initial, const UpdateRule& rule) {
  game.validate_state(initial);
  if (rule.max_slots < 1) throw std::invalid_argument("run: max_slots must be positive");

  Rng rng(rule.seed);
  RunOutcome outcome;
  outcome.final_state = std::move(initial);

  // Potential diagnostics are recorded but never drive the updates.
  ThresholdVector thresholds;
  bool with_potential = false;
  if (rule.record_trajectory && potential_applicable(game)) {
    thresholds = compute_thresholds(game);
    with_potential = true;
  }

  for (int slot = 1; slot <= rule.max_slots; ++slot) {
    std::optional<double> v_before;
    State pre_state;
    if (rule.record_trajectory) {
      pre_state = outcome.final_state;
      if (with_potential) {
        v_before = potential_two_resource(game, pre_state, thresholds);
      }
    }

    const std::optional<Step> moved = step(game, outcome.final_state, rng);
    if (!moved) {
      outcome.converged = true;
      outcome.slots = slot - 1;
      return outcome;
    }

    if (rule.record_trajectory) {
      TrajectoryEntry entry;
      entry.slot = slot;
      entry.player = moved->player;
      entry.from = moved->from;
      entry.to = moved->to;
      entry.congestion_before =
          detail::congestion_on_unchecked(game, pre_state, moved->player, moved->from);
      entry.congestion_after =
          detail::congestion_on_unchecked(game, outcome.final_state, moved->player, moved->to);
      entry.total_congestion = total_congestion(game, outcome.final_state);
      entry.potential_before = v_before;
      if (with_potential) {
        entry.potential_after = potential_two_resource(game, outcome.final_state, thresholds);
      }
      outcome.trajectory.push_back(std::move(entry));
    }
  }

  outcome.slots = rule.max_slots;
  outcome.converged = is_pure_nash(game, outcome.final_state);
  return outcome;
}

RunOutcome run(const Game& game, const UpdateRule& rule) {
  return run(game, game.initial_state(), rule);
}

ThresholdVector compute_thresholds(const Game& game) {
  if (game.n_resources() != 2) {
    throw std::invalid_argument("compute_thresholds: game must have exactly two resources");
  }
  for (int n = 0; n < game.n_players(); ++n) {
    if (game.available(n).size() != 2) {
      throw std::invalid_argument(
          "compute_thresholds: both resources must be available to every player");
    }
  }

  constexpr double kTol = 1e-12;
  ThresholdVector thresholds(game.n_players());

  for (int n = 0; n < game.n_players(); ++n) {
    const double m_n = game.spatial().in_weight_sum(n);
    const PayoffSpec& f1 = game.payoff_spec(n, 1);
    const PayoffSpec& f2 = game.payoff_spec(n, 2);
    // g(x) = f1(x) - f2(M - x) is strictly decreasing on [0, M]: resource 1
    // is preferred below the root, resource 2 above.
    const auto g = [&](double x) { return evaluate(f1, x) - evaluate(f2, m_n - x); };

    if (m_n == 0.0) {
      // Isolated player; compare the two payoffs at zero congestion. The
      // Reciprocal sentinel compares equal to itself here.
      const double p1 = evaluate(f1, 0.0);
      const double p2 = evaluate(f2, 0.0);
      if (p1 < p2) {
        thresholds[n] = 1.0;  // 1 + M, resource 2 always preferred
      } else if (p1 > p2) {
        thresholds[n] = -1.0;
      } else {
        thresholds[n] = 0.0;  // x* = 0
      }
      continue;
    }

    const double g_lo = g(0.0);
    const double g_hi = g(m_n);
    if (g_lo < 0.0) {
      thresholds[n] = 1.0 + m_n;  // resource 2 always preferred
      continue;
    }
    if (g_hi > 0.0) {
      thresholds[n] = -1.0;  // resource 1 always preferred
      continue;
    }

    double lo = 0.0, hi = m_n;  // g(lo) >= 0 >= g(hi)
    while (hi - lo > kTol) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) >= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double x_star = 0.5 * (lo + hi);
    thresholds[n] = m_n - x_star;
  }
  return thresholds;
}

double potential_two_resource(const Game& game, const State& state,
                              const ThresholdVector& thresholds) {
  if (game.n_resources() != 2) {
    throw std::invalid_argument("potential_two_resource: game must have exactly two resources");
  }
  if (!classify_structure(game.spatial()).is_undirected) {
    throw std::invalid_argument("potential_two_resource: spatial matrix must be symmetric");
  }
  game.validate_state(state);
  if (thresholds.size() != static_cast<std::size_t>(game.n_players())) {
    throw std::invalid_argument("potential_two_resource: threshold vector size mismatch");
  }

  const SpatialMatrix& s = game.spatial();
  const int players = game.n_players();
  double quadratic = 0.0;
  double linear = 0.0;
  for (int m = 0; m < players; ++m) {
    const double xm = static_cast<double>(state[m] - 1);
    for (int mp = 0; mp < players; ++mp) {
      quadratic += s(mp, m) * xm * static_cast<double>(state[mp] - 1);
    }
    linear += thresholds[m] * xm;
  }
  return 0.5 * quadratic - linear;
}

bool congestion_delta_identity_check(const Game& game, const State& before, const State& after,
                                     int n) {
  game.validate_player(n);
  game.validate_state(before);
  game.validate_state(after);
  for (int m = 0; m < game.n_players(); ++m) {
    if (m != n && before[m] != after[m]) {
      throw std::invalid_argument(
          "congestion_delta_identity_check: states differ at a player other than n");
    }
  }
  const double c_before = detail::congestion_on_unchecked(game, before, n, before[n]);
  const double c_after = detail::congestion_on_unchecked(game, after, n, after[n]);
  const double delta_total = total_congestion(game, after) - total_congestion(game, before);
  return std::abs(delta_total - 2.0 * (c_after - c_before)) <= 1e-9;
}

}  // namespace gcgwe
