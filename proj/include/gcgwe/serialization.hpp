#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gcgwe/dynamics.hpp"
#include "gcgwe/game.hpp"
#include "gcgwe/generators.hpp"
#include "gcgwe/statespace.hpp"

namespace gcgwe {

// All file formats use 1-based player and resource indices, matching the
// convention that the initial condition is "every player on resource 1".
// State indices (in transition-graph exports) are 0-based enumeration ranks.

nlohmann::json game_to_json(const Game& game);
Game game_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const State& state);
State state_from_json(const nlohmann::json& j);

/// One JSON object per line:
/// {slot, player, from, to, congestion_of_player_before,
///  congestion_of_player_after, total_congestion, potential_v}.
void write_trajectory_jsonl(std::ostream& out, const std::vector<TrajectoryEntry>& trajectory);

/// Graphviz digraph; nodes labeled by choice vectors, equilibria
/// double-circled, edges labeled "p<player>:<resource>".
void write_transition_graph_dot(std::ostream& out, const TransitionGraph& graph);

/// {states: [[...]], edges: [[i, j, player, resource], ...], pne: [...]}.
nlohmann::json transition_graph_to_json(const TransitionGraph& graph);

nlohmann::json wireless_scenario_to_json(const WirelessScenario& scenario);
WirelessScenario wireless_scenario_from_json(const nlohmann::json& j);

/// Simple undirected graph file: {"n_vertices": k, "edges": [[u, v], ...]}
/// with 1-based vertices. Returns a dense 0/1 adjacency matrix.
std::vector<std::vector<double>> adjacency_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace gcgwe
