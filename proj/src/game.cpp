#include "gcgwe/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gcgwe {

Game::Game(SpatialMatrix spatial, int n_resources, std::vector<std::vector<int>> available,
           std::vector<std::vector<PayoffSpec>> payoffs)
    : spatial_(std::move(spatial)),
      n_resources_(n_resources),
      available_(std::move(available)),
      payoffs_(std::move(payoffs)) {
  const int n = spatial_.n_players();
  if (n_resources_ < 1) throw std::invalid_argument("Game: need at least one resource");
  if (static_cast<int>(available_.size()) != n || static_cast<int>(payoffs_.size()) != n) {
    throw std::invalid_argument("Game: available/payoffs size must match player count");
  }
  for (int p = 0; p < n; ++p) {
    auto& avail = available_[p];
    auto& specs = payoffs_[p];
    if (avail.empty()) {
      throw std::invalid_argument("Game: player " + std::to_string(p + 1) +
                                  " has an empty available set");
    }
    if (avail.size() != specs.size()) {
      throw std::invalid_argument("Game: payoffs must be defined exactly for available resources");
    }
    // Sort the (resource, spec) pairs together and reject duplicates.
    std::vector<int> order(avail.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return avail[a] < avail[b]; });
    std::vector<int> sorted_avail(avail.size());
    std::vector<PayoffSpec> sorted_specs(specs.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      sorted_avail[i] = avail[order[i]];
      sorted_specs[i] = specs[order[i]];
    }
    for (std::size_t i = 0; i < sorted_avail.size(); ++i) {
      const int r = sorted_avail[i];
      if (r < 1 || r > n_resources_) {
        throw std::invalid_argument("Game: resource index out of range (resources are 1-based)");
      }
      if (i > 0 && sorted_avail[i] == sorted_avail[i - 1]) {
        throw std::invalid_argument("Game: duplicate resource in available set");
      }
      validate(sorted_specs[i]);
    }
    avail = std::move(sorted_avail);
    specs = std::move(sorted_specs);
  }

  homogeneous_ = true;
  for (int p = 0; p < n && homogeneous_; ++p) {
    for (std::size_t i = 1; i < payoffs_[p].size(); ++i) {
      if (!(payoffs_[p][i] == payoffs_[p][0])) {
        homogeneous_ = false;
        break;
      }
    }
  }
}

Game Game::uniform_availability(SpatialMatrix spatial, int n_resources,
                                std::vector<std::vector<PayoffSpec>> payoffs_per_player) {
  const int n = spatial.n_players();
  std::vector<int> all(n_resources);
  for (int r = 0; r < n_resources; ++r) all[r] = r + 1;
  std::vector<std::vector<int>> available(n, all);
  return Game(std::move(spatial), n_resources, std::move(available),
              std::move(payoffs_per_player));
}

const PayoffSpec& Game::payoff_spec(int n, int r) const {
  validate_player(n);
  const int pos = resource_position(n, r);
  if (pos < 0) {
    throw std::invalid_argument("Game: resource " + std::to_string(r) +
                                " not available to player " + std::to_string(n + 1));
  }
  return payoffs_[n][pos];
}

int Game::resource_position(int n, int r) const {
  const auto& avail = available_[n];
  const auto it = std::lower_bound(avail.begin(), avail.end(), r);
  if (it == avail.end() || *it != r) return -1;
  return static_cast<int>(it - avail.begin());
}

State Game::initial_state() const {
  State state(n_players());
  for (int p = 0; p < n_players(); ++p) state[p] = available_[p].front();
  return state;
}

void Game::validate_player(int n) const {
  if (n < 0 || n >= n_players()) throw std::out_of_range("Game: player index out of range");
}

void Game::validate_state(const State& state) const {
  if (static_cast<int>(state.size()) != n_players()) {
    throw std::invalid_argument("Game: state length must equal player count");
  }
  for (int p = 0; p < n_players(); ++p) {
    if (resource_position(p, state[p]) < 0) {
      throw std::invalid_argument("Game: state assigns player " + std::to_string(p + 1) +
                                  " an unavailable resource");
    }
  }
}

namespace detail {

double congestion_on_unchecked(const Game& game, const State& state, int n, int r) {
  const SpatialMatrix& s = game.spatial();
  const int players = game.n_players();
  double sum = 0.0;
  for (int m = 0; m < players; ++m) {
    if (state[m] == r) sum += s(m, n);  // S(n, n) = 0, so m == n is harmless
  }
  return sum;
}

bool player_has_better_response(const Game& game, const State& state, int n) {
  const double current = congestion_on_unchecked(game, state, n, state[n]);
  if (game.resource_homogeneous()) {
    for (int r : game.available(n)) {
      if (r == state[n]) continue;
      if (congestion_on_unchecked(game, state, n, r) < current) return true;
    }
    return false;
  }
  const double current_payoff = evaluate(game.payoff_spec(n, state[n]), current);
  const auto& avail = game.available(n);
  for (std::size_t i = 0; i < avail.size(); ++i) {
    const int r = avail[i];
    if (r == state[n]) continue;
    const double alt = evaluate(game.payoff_spec(n, r), congestion_on_unchecked(game, state, n, r));
    if (alt > current_payoff) return true;
  }
  return false;
}

}  // namespace detail

double congestion_level(const Game& game, const State& state, int n) {
  game.validate_player(n);
  game.validate_state(state);
  return detail::congestion_on_unchecked(game, state, n, state[n]);
}

double congestion_on(const Game& game, const State& state, int n, int r) {
  game.validate_player(n);
  game.validate_state(state);
  if (r < 1 || r > game.n_resources()) throw std::out_of_range("congestion_on: bad resource");
  return detail::congestion_on_unchecked(game, state, n, r);
}

double payoff(const Game& game, const State& state, int n) {
  game.validate_player(n);
  game.validate_state(state);
  const double x = detail::congestion_on_unchecked(game, state, n, state[n]);
  return evaluate(game.payoff_spec(n, state[n]), x);
}

bool is_better_response(const Game& game, const State& state, int n, int r) {
  game.validate_player(n);
  game.validate_state(state);
  if (game.resource_position(n, r) < 0) {
    throw std::invalid_argument("is_better_response: resource not available to player");
  }
  if (r == state[n]) return false;
  const double cong_new = detail::congestion_on_unchecked(game, state, n, r);
  const double cong_cur = detail::congestion_on_unchecked(game, state, n, state[n]);
  if (game.resource_homogeneous()) {
    return cong_new < cong_cur;  // congestion comparison; avoids the 1/0 sentinel
  }
  return evaluate(game.payoff_spec(n, r), cong_new) >
         evaluate(game.payoff_spec(n, state[n]), cong_cur);
}

std::vector<int> better_response_set(const Game& game, const State& state, int n) {
  game.validate_player(n);
  game.validate_state(state);
  std::vector<int> result;
  const double cong_cur = detail::congestion_on_unchecked(game, state, n, state[n]);
  const bool homogeneous = game.resource_homogeneous();
  const double payoff_cur =
      homogeneous ? 0.0 : evaluate(game.payoff_spec(n, state[n]), cong_cur);
  for (int r : game.available(n)) {
    if (r == state[n]) continue;
    const double cong_new = detail::congestion_on_unchecked(game, state, n, r);
    const bool better = homogeneous
                            ? cong_new < cong_cur
                            : evaluate(game.payoff_spec(n, r), cong_new) > payoff_cur;
    if (better) result.push_back(r);
  }
  return result;
}

bool is_pure_nash(const Game& game, const State& state) {
  game.validate_state(state);
  for (int n = 0; n < game.n_players(); ++n) {
    if (detail::player_has_better_response(game, state, n)) return false;
  }
  return true;
}

double total_congestion(const Game& game, const State& state) {
  game.validate_state(state);
  double total = 0.0;
  for (int n = 0; n < game.n_players(); ++n) {
    total += detail::congestion_on_unchecked(game, state, n, state[n]);
  }
  return total;
}

std::vector<CongestionBound> check_equilibrium_congestion_bound(const Game& game,
                                                                const State& state) {
  if (!game.resource_homogeneous()) {
    throw std::invalid_argument(
        "check_equilibrium_congestion_bound: game must be resource-homogeneous");
  }
  if (!is_pure_nash(game, state)) {
    throw std::invalid_argument(
        "check_equilibrium_congestion_bound: state is not a pure Nash equilibrium");
  }
  constexpr double kTol = 1e-9;
  std::vector<CongestionBound> report(game.n_players());
  for (int n = 0; n < game.n_players(); ++n) {
    auto& entry = report[n];
    entry.congestion = detail::congestion_on_unchecked(game, state, n, state[n]);
    entry.bound = game.spatial().in_weight_sum(n) / static_cast<double>(game.available(n).size());
    entry.satisfied = entry.congestion <= entry.bound + kTol;
  }
  return report;
}

}  // namespace gcgwe
