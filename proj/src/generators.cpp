#include "gcgwe/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gcgwe {

SpatialMatrix gen_undirected_uniform(int n_players, Rng& rng) {
  SpatialMatrix s(n_players);
  for (int i = 0; i < n_players; ++i) {
    for (int j = i + 1; j < n_players; ++j) {
      const double w = static_cast<double>(rng.below(2));
      s.set(i, j, w);
      s.set(j, i, w);
    }
  }
  return s;
}

SpatialMatrix gen_undirected_weighted(int n_players, Rng& rng) {
  SpatialMatrix s(n_players);
  for (int i = 0; i < n_players; ++i) {
    for (int j = i + 1; j < n_players; ++j) {
      const double w = rng.uniform();
      s.set(i, j, w);
      s.set(j, i, w);
    }
  }
  return s;
}

SpatialMatrix gen_directed_weighted(int n_players, Rng& rng) {
  SpatialMatrix s(n_players);
  for (int i = 0; i < n_players; ++i) {
    for (int j = 0; j < n_players; ++j) {
      if (i != j) s.set(i, j, rng.uniform());
    }
  }
  return s;
}

std::vector<std::vector<PayoffSpec>> gen_heterogeneous_payoffs(int n_players, int n_resources,
                                                               Rng& rng) {
  std::vector<std::vector<PayoffSpec>> payoffs(n_players);
  for (int n = 0; n < n_players; ++n) {
    payoffs[n].reserve(n_resources);
    for (int r = 0; r < n_resources; ++r) {
      DecreasingCubic cubic;
      cubic.a = rng.uniform_open();
      cubic.b = rng.uniform_open();
      cubic.c = rng.uniform_open();
      cubic.d = rng.uniform_open();
      payoffs[n].push_back(cubic);
    }
  }
  return payoffs;
}

std::vector<std::vector<PayoffSpec>> gen_homogeneous_payoffs(int n_players, int n_resources) {
  return std::vector<std::vector<PayoffSpec>>(
      n_players, std::vector<PayoffSpec>(n_resources, Reciprocal{}));
}

SpatialMatrix gen_random_directed_tree(int n_players, Rng& rng) {
  SpatialMatrix s(n_players);
  if (n_players == 1) return s;

  // Uniform labeled tree via Prufer decode, then random orientation/weight.
  std::vector<std::pair<int, int>> edges;
  if (n_players == 2) {
    edges.push_back({0, 1});
  } else {
    std::vector<int> prufer(n_players - 2);
    for (int& p : prufer) p = static_cast<int>(rng.below(n_players));
    std::vector<int> degree(n_players, 1);
    for (int p : prufer) ++degree[p];
    for (int p : prufer) {
      for (int v = 0; v < n_players; ++v) {
        if (degree[v] == 1) {
          edges.push_back({v, p});
          --degree[v];
          --degree[p];
          break;
        }
      }
    }
    int u = -1, v = -1;
    for (int w = 0; w < n_players; ++w) {
      if (degree[w] == 1) (u < 0 ? u : v) = w;
    }
    edges.push_back({u, v});
  }

  for (const auto& [a, b] : edges) {
    const bool flip = rng.below(2) == 1;
    const double w = rng.uniform_positive();
    if (flip) {
      s.set(b, a, w);
    } else {
      s.set(a, b, w);
    }
  }
  return s;
}

SpatialMatrix gen_random_dag(int n_players, double edge_prob, Rng& rng) {
  if (edge_prob < 0.0 || edge_prob > 1.0) {
    throw std::invalid_argument("gen_random_dag: edge_prob must lie in [0,1]");
  }
  std::vector<int> perm(n_players);
  for (int i = 0; i < n_players; ++i) perm[i] = i;
  for (int i = n_players - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  }
  SpatialMatrix s(n_players);
  for (int i = 0; i < n_players; ++i) {
    for (int j = i + 1; j < n_players; ++j) {
      if (rng.uniform() < edge_prob) {
        s.set(perm[i], perm[j], rng.uniform_positive());
      }
    }
  }
  return s;
}

Game gen_odd_directed_cycle(int n_vertices, const std::vector<double>& weights,
                            int n_resources) {
  if (n_vertices < 3 || n_vertices % 2 == 0) {
    throw std::invalid_argument("gen_odd_directed_cycle: need an odd vertex count >= 3");
  }
  if (static_cast<int>(weights.size()) != n_vertices) {
    throw std::invalid_argument("gen_odd_directed_cycle: need one weight per edge");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("gen_odd_directed_cycle: weights must be positive");
  }
  SpatialMatrix s(n_vertices);
  for (int v = 0; v < n_vertices; ++v) {
    s.set(v, (v + 1) % n_vertices, weights[v]);
  }
  std::vector<std::vector<PayoffSpec>> payoffs(
      n_vertices, std::vector<PayoffSpec>(n_resources, NegLinear{}));
  return Game::uniform_availability(std::move(s), n_resources, std::move(payoffs));
}

namespace {

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

std::pair<WirelessScenario, Game> gen_wireless(const WirelessParams& params, Rng& rng) {
  if (params.region_length_m <= 0.0) {
    throw std::invalid_argument("gen_wireless: region length must be positive");
  }
  if (params.n_users < 1 || params.n_channels < 1) {
    throw std::invalid_argument("gen_wireless: need at least one user and one channel");
  }

  WirelessScenario scenario;
  scenario.region_length_m = params.region_length_m;
  scenario.n_users = params.n_users;
  scenario.n_channels = params.n_channels;
  scenario.bandwidth_hz = params.bandwidth_hz;
  scenario.attenuation = params.attenuation;
  scenario.noise_mw_per_hz = params.noise_mw_per_hz;
  scenario.users.resize(params.n_users);

  // All transmitters first, then receivers: the 1 m exclusion is checked
  // against every transmitter.
  for (auto& user : scenario.users) {
    user.power_mw = params.power_mw;
    user.tx = {params.region_length_m * rng.uniform(), params.region_length_m * rng.uniform()};
  }
  constexpr int kMaxRedraws = 10000;
  constexpr double kReceiverRadius = 100.0;
  constexpr double kExclusion = 1.0;
  for (auto& user : scenario.users) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxRedraws && !placed; ++attempt) {
      // Uniform over the disk of radius 100 m around the transmitter;
      // receivers may land outside the square.
      const double radius = kReceiverRadius * std::sqrt(rng.uniform());
      const double angle = 2.0 * std::numbers::pi * rng.uniform();
      const std::array<double, 2> candidate{user.tx[0] + radius * std::cos(angle),
                                            user.tx[1] + radius * std::sin(angle)};
      placed = true;
      for (const auto& other : scenario.users) {
        if (distance(candidate, other.tx) < kExclusion) {
          placed = false;
          break;
        }
      }
      if (placed) user.rx = candidate;
    }
    if (!placed) {
      throw std::runtime_error("gen_wireless: receiver placement failed after 10000 redraws");
    }
  }

  return {scenario, wireless_game(scenario)};
}

Game wireless_game(const WirelessScenario& scenario) {
  const int n = scenario.n_users;
  SpatialMatrix s(n);
  for (int m = 0; m < n; ++m) {
    for (int u = 0; u < n; ++u) {
      if (m == u) continue;
      const double d = distance(scenario.users[m].tx, scenario.users[u].rx);
      s.set(m, u, scenario.users[m].power_mw / std::pow(d, scenario.attenuation));
    }
  }
  std::vector<std::vector<PayoffSpec>> payoffs(n);
  for (int u = 0; u < n; ++u) {
    const double own = distance(scenario.users[u].tx, scenario.users[u].rx);
    Shannon spec;
    spec.bandwidth_hz = scenario.bandwidth_hz;
    spec.signal_mw = scenario.users[u].power_mw / std::pow(own, scenario.attenuation);
    spec.noise_mw_per_hz = scenario.noise_mw_per_hz;
    payoffs[u].assign(scenario.n_channels, spec);
  }
  return Game::uniform_availability(std::move(s), scenario.n_channels, std::move(payoffs));
}

double interference_asymmetry(const SpatialMatrix& spatial) {
  const int n = spatial.n_players();
  double sum = 0.0;
  int pairs = 0;
  for (int m = 0; m < n; ++m) {
    for (int u = 0; u < n; ++u) {
      if (m == u) continue;
      const double a = spatial(m, u);
      const double b = spatial(u, m);
      const double denom = std::max(a, b);
      sum += denom > 0.0 ? std::abs(a - b) / denom : 0.0;
      ++pairs;
    }
  }
  return pairs > 0 ? sum / pairs : 0.0;
}

}  // namespace gcgwe
