#include "gcgwe/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace gcgwe {

using nlohmann::json;

namespace {

json payoff_to_json(const PayoffSpec& spec) {
  json params = json::object();
  if (const auto* cubic = std::get_if<DecreasingCubic>(&spec)) {
    params["a"] = cubic->a;
    params["b"] = cubic->b;
    params["c"] = cubic->c;
    params["d"] = cubic->d;
  } else if (const auto* shannon = std::get_if<Shannon>(&spec)) {
    params["bandwidth_hz"] = shannon->bandwidth_hz;
    params["signal_mw"] = shannon->signal_mw;
    params["noise_mw_per_hz"] = shannon->noise_mw_per_hz;
  }
  return json{{"variant", variant_name(spec)}, {"params", params}};
}

PayoffSpec payoff_from_json(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "neg_linear") return NegLinear{};
  if (variant == "reciprocal") return Reciprocal{};
  const json& params = j.at("params");
  if (variant == "decreasing_cubic") {
    DecreasingCubic cubic;
    cubic.a = params.at("a").get<double>();
    cubic.b = params.at("b").get<double>();
    cubic.c = params.at("c").get<double>();
    cubic.d = params.at("d").get<double>();
    return cubic;
  }
  if (variant == "shannon") {
    Shannon shannon;
    shannon.bandwidth_hz = params.at("bandwidth_hz").get<double>();
    shannon.signal_mw = params.at("signal_mw").get<double>();
    shannon.noise_mw_per_hz = params.at("noise_mw_per_hz").get<double>();
    return shannon;
  }
  throw std::invalid_argument("unknown payoff variant: " + variant);
}

}  // namespace

json game_to_json(const Game& game) {
  const int n = game.n_players();
  json available = json::array();
  json payoffs = json::array();
  for (int p = 0; p < n; ++p) {
    available.push_back(game.available(p));
    for (int r : game.available(p)) {
      json entry = payoff_to_json(game.payoff_spec(p, r));
      entry["player"] = p + 1;
      entry["resource"] = r;
      payoffs.push_back(std::move(entry));
    }
  }
  json spatial = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(game.spatial()(i, j));
    spatial.push_back(std::move(row));
  }
  return json{{"n_players", n},
              {"n_resources", game.n_resources()},
              {"available", std::move(available)},
              {"payoffs", std::move(payoffs)},
              {"spatial", std::move(spatial)}};
}

Game game_from_json(const json& j) {
  const int n = j.at("n_players").get<int>();
  const int resources = j.at("n_resources").get<int>();
  if (n < 1) throw std::invalid_argument("game_from_json: n_players must be positive");

  std::vector<double> row_major;
  row_major.reserve(static_cast<std::size_t>(n) * n);
  const json& spatial = j.at("spatial");
  if (static_cast<int>(spatial.size()) != n) {
    throw std::invalid_argument("game_from_json: spatial row count mismatch");
  }
  for (const auto& row : spatial) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("game_from_json: spatial column count mismatch");
    }
    for (const auto& v : row) row_major.push_back(v.get<double>());
  }

  std::vector<std::vector<int>> available(n);
  const json& avail = j.at("available");
  if (static_cast<int>(avail.size()) != n) {
    throw std::invalid_argument("game_from_json: available size mismatch");
  }
  for (int p = 0; p < n; ++p) available[p] = avail[p].get<std::vector<int>>();

  std::vector<std::vector<PayoffSpec>> payoffs(n);
  for (int p = 0; p < n; ++p) payoffs[p].resize(available[p].size());
  std::vector<std::vector<char>> filled(n);
  for (int p = 0; p < n; ++p) filled[p].assign(available[p].size(), 0);
  for (const auto& entry : j.at("payoffs")) {
    const int player = entry.at("player").get<int>() - 1;
    const int resource = entry.at("resource").get<int>();
    if (player < 0 || player >= n) {
      throw std::invalid_argument("game_from_json: payoff player out of range");
    }
    const auto& list = available[player];
    const auto it = std::find(list.begin(), list.end(), resource);
    if (it == list.end()) {
      throw std::invalid_argument("game_from_json: payoff resource not in available set");
    }
    const auto pos = static_cast<std::size_t>(it - list.begin());
    payoffs[player][pos] = payoff_from_json(entry);
    filled[player][pos] = 1;
  }
  for (int p = 0; p < n; ++p) {
    for (char f : filled[p]) {
      if (!f) throw std::invalid_argument("game_from_json: missing payoff entry");
    }
  }

  return Game(SpatialMatrix(n, std::move(row_major)), resources, std::move(available),
              std::move(payoffs));
}

json state_to_json(const State& state) { return json(state); }

State state_from_json(const json& j) { return j.get<State>(); }

void write_trajectory_jsonl(std::ostream& out, const std::vector<TrajectoryEntry>& trajectory) {
  for (const TrajectoryEntry& e : trajectory) {
    json record{{"slot", e.slot},
                {"player", e.player + 1},
                {"from", e.from},
                {"to", e.to},
                {"congestion_of_player_before", e.congestion_before},
                {"congestion_of_player_after", e.congestion_after},
                {"total_congestion", e.total_congestion}};
    record["potential_v"] = e.potential_after ? json(*e.potential_after) : json(nullptr);
    out << record.dump() << '\n';
  }
}

void write_transition_graph_dot(std::ostream& out, const TransitionGraph& graph) {
  std::vector<char> is_pne(graph.states.size(), 0);
  for (std::int64_t i : graph.pne_indices) is_pne[i] = 1;
  out << "digraph statespace {\n";
  for (std::size_t i = 0; i < graph.states.size(); ++i) {
    out << "  s" << i << " [label=\"(";
    for (std::size_t p = 0; p < graph.states[i].size(); ++p) {
      if (p > 0) out << ',';
      out << graph.states[i][p];
    }
    out << ")\"";
    if (is_pne[i]) out << ", peripheries=2";
    out << "];\n";
  }
  for (const TransitionEdge& e : graph.edges) {
    out << "  s" << e.from << " -> s" << e.to << " [label=\"p" << (e.player + 1) << ':'
        << e.resource << "\"];\n";
  }
  out << "}\n";
}

json transition_graph_to_json(const TransitionGraph& graph) {
  json states = json::array();
  for (const State& s : graph.states) states.push_back(s);
  json edges = json::array();
  for (const TransitionEdge& e : graph.edges) {
    edges.push_back(json::array({e.from, e.to, e.player + 1, e.resource}));
  }
  return json{{"states", std::move(states)},
              {"edges", std::move(edges)},
              {"pne", graph.pne_indices}};
}

json wireless_scenario_to_json(const WirelessScenario& scenario) {
  json users = json::array();
  for (const WirelessUser& u : scenario.users) {
    users.push_back(json{{"tx", {u.tx[0], u.tx[1]}},
                         {"rx", {u.rx[0], u.rx[1]}},
                         {"power_mw", u.power_mw}});
  }
  return json{{"L", scenario.region_length_m},
              {"N", scenario.n_users},
              {"R", scenario.n_channels},
              {"alpha", scenario.attenuation},
              {"tau0", scenario.noise_mw_per_hz},
              {"bandwidth_hz", scenario.bandwidth_hz},
              {"users", std::move(users)}};
}

WirelessScenario wireless_scenario_from_json(const json& j) {
  WirelessScenario scenario;
  scenario.region_length_m = j.at("L").get<double>();
  scenario.n_users = j.at("N").get<int>();
  scenario.n_channels = j.at("R").get<int>();
  scenario.attenuation = j.at("alpha").get<double>();
  scenario.noise_mw_per_hz = j.at("tau0").get<double>();
  scenario.bandwidth_hz = j.at("bandwidth_hz").get<double>();
  for (const auto& u : j.at("users")) {
    WirelessUser user;
    user.tx = {u.at("tx")[0].get<double>(), u.at("tx")[1].get<double>()};
    user.rx = {u.at("rx")[0].get<double>(), u.at("rx")[1].get<double>()};
    user.power_mw = u.at("power_mw").get<double>();
    scenario.users.push_back(user);
  }
  if (static_cast<int>(scenario.users.size()) != scenario.n_users) {
    throw std::invalid_argument("wireless scenario: user count mismatch");
  }
  return scenario;
}

std::vector<std::vector<double>> adjacency_from_json(const json& j) {
  const int n = j.at("n_vertices").get<int>();
  if (n < 1) throw std::invalid_argument("graph file: n_vertices must be positive");
  std::vector<std::vector<double>> adjacency(n, std::vector<double>(n, 0.0));
  for (const auto& edge : j.at("edges")) {
    const int u = edge.at(0).get<int>() - 1;
    const int v = edge.at(1).get<int>() - 1;
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw std::invalid_argument("graph file: bad edge endpoints");
    }
    adjacency[u][v] = 1.0;
    adjacency[v][u] = 1.0;
  }
  return adjacency;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace gcgwe
