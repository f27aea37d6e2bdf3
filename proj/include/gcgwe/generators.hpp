#pragma once

#include <array>
#include <vector>

#include "gcgwe/game.hpp"
#include "gcgwe/rng.hpp"

namespace gcgwe {

/// Symmetric matrix with {0,1} weights: an Erdos-Renyi graph with edge
/// probability 1/2. Upper triangle drawn row by row, mirrored.
SpatialMatrix gen_undirected_uniform(int n_players, Rng& rng);

/// Symmetric matrix with U[0,1] weights on the upper triangle, mirrored.
SpatialMatrix gen_undirected_weighted(int n_players, Rng& rng);

/// All off-diagonal entries independent U[0,1]; generally asymmetric.
SpatialMatrix gen_directed_weighted(int n_players, Rng& rng);

/// Independent decreasing cubic -(a+bx+cx^2+dx^3) per (player, resource),
/// coefficients uniform in (0,1). Player outer loop, resource inner.
std::vector<std::vector<PayoffSpec>> gen_heterogeneous_payoffs(int n_players, int n_resources,
                                                               Rng& rng);

/// Reciprocal 1/x for every (player, resource); resource-homogeneous.
std::vector<std::vector<PayoffSpec>> gen_homogeneous_payoffs(int n_players, int n_resources);

/// Random directed tree: a uniform labeled tree (Prufer decode), each edge
/// independently oriented and weighted U(0,1].
SpatialMatrix gen_random_directed_tree(int n_players, Rng& rng);

/// Random DAG: edges point forward along a random permutation, present with
/// probability edge_prob, weight U(0,1].
SpatialMatrix gen_random_dag(int n_players, double edge_prob, Rng& rng);

/// The no-equilibrium family: directed cycle 1 -> 2 -> ... -> n -> 1 with the
/// given positive weights, two resources, f(x) = -x everywhere. n_vertices
/// must be odd and >= 3.
Game gen_odd_directed_cycle(int n_vertices, const std::vector<double>& weights,
                            int n_resources = 2);

/// A transmitter-receiver pair sharing spectrum; coordinates in meters.
struct WirelessUser {
  std::array<double, 2> tx{0.0, 0.0};
  std::array<double, 2> rx{0.0, 0.0};
  double power_mw = 100.0;
};

struct WirelessScenario {
  double region_length_m = 200.0;
  int n_users = 20;
  int n_channels = 5;
  double bandwidth_hz = 20e6;
  double attenuation = 4.0;
  double noise_mw_per_hz = 3.981071705534973e-18;  // 10^(-17.4) = -174 dBm/Hz
  std::vector<WirelessUser> users;
};

struct WirelessParams {
  int n_users = 20;
  int n_channels = 5;
  double region_length_m = 200.0;
  double power_mw = 100.0;
  double bandwidth_hz = 20e6;
  double attenuation = 4.0;
  double noise_mw_per_hz = 3.981071705534973e-18;
};

/// Spectrum-sharing instance under the physical interference model.
/// Transmitters are uniform in the L x L square; each receiver is uniform in
/// the 100 m disk around its transmitter, redrawn until it is at least 1 m
/// from every transmitter (throws std::runtime_error after 10^4 redraws).
/// Interference weights are S(m,n) = P_m / d(tx_m, rx_n)^alpha; payoffs are
/// the Shannon rate with the user's own received power, identical across
/// channels. The resulting game is resource-homogeneous.
std::pair<WirelessScenario, Game> gen_wireless(const WirelessParams& params, Rng& rng);

/// Rebuilds the game from scenario geometry (deterministic, no draws).
Game wireless_game(const WirelessScenario& scenario);

/// Mean over ordered pairs of |S(m,n) - S(n,m)| / max(S(m,n), S(n,m)); the
/// interference-asymmetry statistic that shrinks as the region grows.
double interference_asymmetry(const SpatialMatrix& spatial);

}  // namespace gcgwe
