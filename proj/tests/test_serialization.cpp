#include <doctest.h>

#include <sstream>
#include <vector>

#include "gcgwe/dynamics.hpp"
#include "gcgwe/generators.hpp"
#include "gcgwe/serialization.hpp"
#include "gcgwe/statespace.hpp"

using namespace gcgwe;

namespace {

bool games_equal(const Game& a, const Game& b) {
  if (a.n_players() != b.n_players() || a.n_resources() != b.n_resources()) return false;
  if (!(a.spatial() == b.spatial())) return false;
  for (int p = 0; p < a.n_players(); ++p) {
    if (a.available(p) != b.available(p)) return false;
    for (int r : a.available(p)) {
      if (!(a.payoff_spec(p, r) == b.payoff_spec(p, r))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("game json round trip is value-identical") {
  SUBCASE("random heterogeneous game") {
    Rng rng(1);
    SpatialMatrix s = gen_directed_weighted(5, rng);
    auto payoffs = gen_heterogeneous_payoffs(5, 3, rng);
    const Game game = Game::uniform_availability(std::move(s), 3, std::move(payoffs));
    const Game back = game_from_json(game_to_json(game));
    CHECK(games_equal(game, back));
    // A second round trip through text hits the printer/parser path too.
    const Game again = game_from_json(nlohmann::json::parse(game_to_json(back).dump()));
    CHECK(games_equal(game, again));
  }
  SUBCASE("all payoff variants and partial availability") {
    SpatialMatrix s(3);
    s.set(0, 1, 0.125);
    s.set(1, 0, 3.0);
    std::vector<std::vector<int>> available{{1, 3}, {2}, {1, 2, 3}};
    std::vector<std::vector<PayoffSpec>> payoffs{
        {NegLinear{}, Reciprocal{}},
        {DecreasingCubic{0.1, 0.2, 0.3, 0.4}},
        {Shannon{20e6, 0.25, 4e-18}, NegLinear{}, DecreasingCubic{0.9, 0.8, 0.7, 0.6}}};
    const Game game(std::move(s), 3, available, payoffs);
    const Game back = game_from_json(nlohmann::json::parse(game_to_json(game).dump()));
    CHECK(games_equal(game, back));
  }
  SUBCASE("wireless game round trips") {
    Rng rng(2);
    WirelessParams params;
    params.n_users = 6;
    params.n_channels = 3;
    const auto [scenario, game] = gen_wireless(params, rng);
    CHECK(games_equal(game, game_from_json(nlohmann::json::parse(game_to_json(game).dump()))));
  }
}

TEST_CASE("game json rejects inconsistent documents") {
  Rng rng(3);
  SpatialMatrix s = gen_undirected_weighted(3, rng);
  auto payoffs = gen_homogeneous_payoffs(3, 2);
  const Game game = Game::uniform_availability(std::move(s), 2, std::move(payoffs));
  nlohmann::json j = game_to_json(game);

  nlohmann::json missing = j;
  missing["payoffs"].erase(0);
  CHECK_THROWS_AS(game_from_json(missing), std::invalid_argument);

  nlohmann::json bad_spatial = j;
  bad_spatial["spatial"][0][0] = 1.0;
  CHECK_THROWS_AS(game_from_json(bad_spatial), std::invalid_argument);
}

TEST_CASE("trajectory jsonl schema") {
  Rng rng(4);
  SpatialMatrix s = gen_undirected_weighted(5, rng);
  auto payoffs = gen_heterogeneous_payoffs(5, 2, rng);
  const Game game = Game::uniform_availability(std::move(s), 2, std::move(payoffs));
  UpdateRule rule;
  rule.seed = 5;
  rule.record_trajectory = true;
  const RunOutcome outcome = run(game, rule);
  REQUIRE_FALSE(outcome.trajectory.empty());

  std::ostringstream buffer;
  write_trajectory_jsonl(buffer, outcome.trajectory);
  std::istringstream lines(buffer.str());
  std::string line;
  int count = 0;
  int last_slot = 0;
  while (std::getline(lines, line)) {
    const nlohmann::json record = nlohmann::json::parse(line);
    CHECK(record.at("slot").get<int>() > last_slot);
    last_slot = record.at("slot").get<int>();
    CHECK(record.at("player").get<int>() >= 1);
    CHECK(record.at("player").get<int>() <= 5);
    CHECK(record.contains("from"));
    CHECK(record.contains("to"));
    CHECK(record.contains("congestion_of_player_before"));
    CHECK(record.contains("congestion_of_player_after"));
    CHECK(record.contains("total_congestion"));
    // Undirected two-resource game: the potential is defined on every step.
    CHECK_FALSE(record.at("potential_v").is_null());
    ++count;
  }
  CHECK(count == static_cast<int>(outcome.trajectory.size()));
}

TEST_CASE("trajectory potential is null when undefined") {
  const Game triangle = gen_odd_directed_cycle(3, {1.0, 1.0, 1.0});
  UpdateRule rule;
  rule.seed = 1;
  rule.max_slots = 10;
  rule.record_trajectory = true;
  const RunOutcome outcome = run(triangle, rule);
  std::ostringstream buffer;
  write_trajectory_jsonl(buffer, outcome.trajectory);
  std::istringstream lines(buffer.str());
  std::string line;
  while (std::getline(lines, line)) {
    CHECK(nlohmann::json::parse(line).at("potential_v").is_null());
  }
}

TEST_CASE("transition graph exports") {
  SpatialMatrix s(2);
  s.set(0, 1, 1.0);
  s.set(1, 0, 1.0);
  auto payoffs = gen_homogeneous_payoffs(2, 2);
  const Game game = Game::uniform_availability(std::move(s), 2, std::move(payoffs));
  const TransitionGraph graph = build_transition_graph(game);

  SUBCASE("dot output double-circles equilibria") {
    std::ostringstream out;
    write_transition_graph_dot(out, graph);
    const std::string dot = out.str();
    CHECK(dot.find("digraph statespace") != std::string::npos);
    CHECK(dot.find("peripheries=2") != std::string::npos);
    CHECK(dot.find("label=\"(1,1)\"") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
  }
  SUBCASE("json adjacency form") {
    const nlohmann::json j = transition_graph_to_json(graph);
    CHECK(j.at("states").size() == 4);
    CHECK(j.at("pne").size() == 2);  // the two split states
    for (const auto& edge : j.at("edges")) {
      REQUIRE(edge.size() == 4);
      const int from = edge[0].get<int>();
      const int player = edge[2].get<int>();
      CHECK(from >= 0);
      CHECK(from < 4);
      CHECK(player >= 1);
      CHECK(player <= 2);
    }
  }
}

TEST_CASE("wireless scenario round trip") {
  Rng rng(6);
  WirelessParams params;
  params.n_users = 4;
  params.n_channels = 2;
  params.region_length_m = 120.0;
  const auto [scenario, game] = gen_wireless(params, rng);
  const WirelessScenario back =
      wireless_scenario_from_json(nlohmann::json::parse(wireless_scenario_to_json(scenario).dump()));
  CHECK(back.region_length_m == scenario.region_length_m);
  CHECK(back.n_users == scenario.n_users);
  CHECK(back.n_channels == scenario.n_channels);
  REQUIRE(back.users.size() == scenario.users.size());
  for (std::size_t i = 0; i < back.users.size(); ++i) {
    CHECK(back.users[i].tx == scenario.users[i].tx);
    CHECK(back.users[i].rx == scenario.users[i].rx);
    CHECK(back.users[i].power_mw == scenario.users[i].power_mw);
  }
  // The regenerated game matches the original bit for bit.
  CHECK(games_equal(game, wireless_game(back)));
}

TEST_CASE("graph file parsing") {
  const nlohmann::json j{{"n_vertices", 4}, {"edges", {{1, 2}, {2, 3}, {3, 4}}}};
  const auto adjacency = adjacency_from_json(j);
  REQUIRE(adjacency.size() == 4);
  CHECK(adjacency[0][1] == 1.0);
  CHECK(adjacency[1][0] == 1.0);
  CHECK(adjacency[0][2] == 0.0);

  const nlohmann::json bad{{"n_vertices", 2}, {"edges", {{1, 1}}}};
  CHECK_THROWS_AS(adjacency_from_json(bad), std::invalid_argument);
}
