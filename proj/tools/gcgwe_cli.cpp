// Command-line front end: instance generation, single runs, batch and sweep
// experiments, exhaustive state-space analysis, constructive solvers, and the
// 3-coloring reduction.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcgwe/dynamics.hpp"
#include "gcgwe/experiment.hpp"
#include "gcgwe/generators.hpp"
#include "gcgwe/serialization.hpp"
#include "gcgwe/solvers.hpp"
#include "gcgwe/statespace.hpp"

namespace {

using namespace gcgwe;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void print_state(std::ostream& out, const State& state) {
  out << '(';
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i > 0) out << ',';
    out << state[i];
  }
  out << ')';
}

void print_verification(const Game& game, const State& state) {
  std::cout << "state: ";
  print_state(std::cout, state);
  std::cout << "\npure_nash: " << (is_pure_nash(game, state) ? "true" : "false") << '\n';
  for (int n = 0; n < game.n_players(); ++n) {
    std::cout << "player " << (n + 1) << ": resource " << state[n] << ", congestion "
              << congestion_level(game, state, n) << ", payoff " << payoff(game, state, n)
              << '\n';
  }
  if (game.resource_homogeneous() && is_pure_nash(game, state)) {
    const auto bounds = check_equilibrium_congestion_bound(game, state);
    for (int n = 0; n < game.n_players(); ++n) {
      std::cout << "player " << (n + 1) << ": congestion " << bounds[n].congestion
                << " <= bound " << bounds[n].bound << ": "
                << (bounds[n].satisfied ? "yes" : "NO") << '\n';
    }
  }
}

int cmd_generate(const std::string& kind, int players, int resources,
                 const std::string& payoff_family, double edge_prob, std::uint64_t seed,
                 const std::string& out_path) {
  Rng rng(seed);
  std::optional<SpatialMatrix> spatial;
  if (kind == "undirected-uniform") {
    spatial = gen_undirected_uniform(players, rng);
  } else if (kind == "undirected-weighted") {
    spatial = gen_undirected_weighted(players, rng);
  } else if (kind == "directed-weighted") {
    spatial = gen_directed_weighted(players, rng);
  } else if (kind == "tree") {
    spatial = gen_random_directed_tree(players, rng);
  } else if (kind == "dag") {
    spatial = gen_random_dag(players, edge_prob, rng);
  } else if (kind == "odd-cycle") {
    std::vector<double> weights(players, 1.0);
    const Game game = gen_odd_directed_cycle(players, weights, resources);
    save_json_file(out_path, game_to_json(game));
    std::cout << "wrote " << out_path << '\n';
    return 0;
  } else {
    throw std::invalid_argument("unknown generator kind: " + kind);
  }

  auto payoffs = payoff_kind_from_string(payoff_family) == PayoffKind::Heterogeneous
                     ? gen_heterogeneous_payoffs(players, resources, rng)
                     : gen_homogeneous_payoffs(players, resources);
  const Game game =
      Game::uniform_availability(std::move(*spatial), resources, std::move(payoffs));
  save_json_file(out_path, game_to_json(game));
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

int cmd_run(const std::string& game_path, std::uint64_t seed, int max_slots,
            const std::string& init_kind, const std::string& trajectory_path) {
  const Game game = game_from_json(load_json_file(game_path));
  UpdateRule rule;
  rule.seed = seed;
  rule.max_slots = max_slots;
  rule.record_trajectory = !trajectory_path.empty();

  State initial;
  if (init_kind == "all-one") {
    initial = game.initial_state();
  } else if (init_kind == "random") {
    Rng rng(derive_seed(seed, 2));
    initial.resize(game.n_players());
    for (int p = 0; p < game.n_players(); ++p) {
      const auto& avail = game.available(p);
      initial[p] = avail[rng.below(avail.size())];
    }
  } else {
    throw std::invalid_argument("init must be all-one or random");
  }

  const RunOutcome outcome = run(game, std::move(initial), rule);
  if (outcome.converged) {
    std::cout << "converged in " << outcome.slots << " slots\n";
  } else {
    std::cout << "timed out after " << outcome.slots << " slots\n";
    const std::size_t tail = std::min<std::size_t>(outcome.trajectory.size(), 5);
    for (std::size_t i = outcome.trajectory.size() - tail; i < outcome.trajectory.size(); ++i) {
      const auto& e = outcome.trajectory[i];
      std::cout << "  slot " << e.slot << ": player " << (e.player + 1) << ' ' << e.from
                << " -> " << e.to << '\n';
    }
  }
  print_verification(game, outcome.final_state);
  if (!trajectory_path.empty()) {
    auto out = open_out(trajectory_path);
    write_trajectory_jsonl(out, outcome.trajectory);
    std::cout << "trajectory written to " << trajectory_path << '\n';
  }
  return outcome.converged ? 0 : 2;
}

ExperimentConfig config_from_cli(const std::string& config_path, const std::string& kind,
                                 int players, int resources, const std::string& spatial,
                                 const std::string& payoffs, const std::string& init,
                                 int trials, std::uint64_t seed, int max_slots,
                                 int fast_threshold, double region_length) {
  if (!config_path.empty()) {
    return experiment_config_from_json(load_json_file(config_path));
  }
  ExperimentConfig config;
  config.kind = kind;
  config.n_players = players;
  config.n_resources = resources;
  config.spatial = spatial_kind_from_string(spatial);
  config.payoffs = payoff_kind_from_string(payoffs);
  config.initial = init == "random" ? InitialKind::Random : InitialKind::AllResourceOne;
  config.trials = trials;
  config.base_seed = seed;
  config.max_slots = max_slots;
  config.fast_threshold = fast_threshold;
  if (kind == "wireless-batch") {
    config.wireless.n_users = players;
    config.wireless.n_channels = resources;
    config.wireless.region_length_m = region_length;
    config.initial = init == "all-one" ? InitialKind::AllResourceOne : InitialKind::Random;
  }
  config.validate();
  return config;
}

int cmd_batch(ExperimentConfig config, const std::string& out_prefix,
              const std::string& format) {
  if (!out_prefix.empty()) {
    config.out_prefix = out_prefix;
    config.format = format;
  }
  const BatchReport report = run_batch(config);
  std::cout << "trials " << config.trials << ": converged " << report.n_converged << " ("
            << report.converged_fraction << "), fast_fraction " << report.fast_fraction
            << ", mean slots " << report.mean_slots << '\n';
  if (!config.out_prefix.empty()) {
    if (config.format == "csv" || config.format == "both") {
      auto out = open_out(config.out_prefix + ".csv");
      write_trials_csv(out, report);
    }
    if (config.format == "json" || config.format == "both") {
      save_json_file(config.out_prefix + ".json", batch_report_to_json(report));
    }
    std::cout << "outputs written to " << config.out_prefix << ".{csv,json}\n";
  }
  return 0;
}

int cmd_sweep(const ExperimentConfig& config_template, const std::string& axis_name,
              const std::vector<double>& values, const std::string& out_path) {
  SweepAxis axis;
  if (axis_name == "players") {
    axis = SweepAxis::Players;
  } else if (axis_name == "resources") {
    axis = SweepAxis::Resources;
  } else if (axis_name == "region-length") {
    axis = SweepAxis::RegionLength;
  } else {
    throw std::invalid_argument("axis must be players, resources, or region-length");
  }
  const auto points = sweep(config_template, axis, values);
  std::ostringstream csv;
  write_sweep_csv(csv, axis, points);
  std::cout << csv.str();
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << csv.str();
    std::cout << "sweep written to " << out_path << '\n';
  }
  return 0;
}

int cmd_analyze(const std::string& game_path, std::uint64_t cap, const std::string& dot_path,
                const std::string& json_path) {
  const Game game = game_from_json(load_json_file(game_path));
  const TransitionGraph graph = build_transition_graph(game, cap);
  std::cout << "states: " << graph.states.size() << '\n';
  std::cout << "transitions: " << graph.edges.size() << '\n';
  std::cout << "pure_nash_count: " << graph.pne_indices.size() << '\n';
  std::cout << "fip: " << (has_fip(game, cap) ? "true" : "false") << '\n';

  const ReachabilityReport reach = reachability_analysis(game, game.initial_state(), cap);
  std::cout << "pne_reachable_from_all_one: " << (reach.pne_reachable ? "true" : "false") << '\n';
  if (reach.trap) {
    std::cout << "trap_states: " << reach.trap->size() << '\n';
  } else {
    std::cout << "trap_states: none\n";
  }

  if (!dot_path.empty()) {
    auto out = open_out(dot_path);
    write_transition_graph_dot(out, graph);
    std::cout << "dot written to " << dot_path << '\n';
  }
  if (!json_path.empty()) {
    save_json_file(json_path, transition_graph_to_json(graph));
    std::cout << "graph json written to " << json_path << '\n';
  }
  return 0;
}

int cmd_solve(const std::string& game_path, const std::string& method, std::uint64_t seed,
              int max_slots) {
  const Game game = game_from_json(load_json_file(game_path));
  if (method == "dag") {
    const State state = solve_dag(game);
    print_verification(game, state);
    return is_pure_nash(game, state) ? 0 : 2;
  }
  if (method == "tree") {
    const State state = solve_directed_tree(game);
    print_verification(game, state);
    return is_pure_nash(game, state) ? 0 : 2;
  }
  if (method == "dynamics") {
    UpdateRule rule;
    rule.seed = seed;
    rule.max_slots = max_slots;
    rule.record_trajectory = true;
    const RunOutcome outcome = run(game, rule);
    if (outcome.converged) {
      std::cout << "converged in " << outcome.slots << " slots\n";
    } else {
      std::cout << "timed out after " << outcome.slots << " slots; trajectory tail:\n";
      const std::size_t tail = std::min<std::size_t>(outcome.trajectory.size(), 5);
      for (std::size_t i = outcome.trajectory.size() - tail; i < outcome.trajectory.size(); ++i) {
        const auto& e = outcome.trajectory[i];
        std::cout << "  slot " << e.slot << ": player " << (e.player + 1) << ' ' << e.from
                  << " -> " << e.to << '\n';
      }
    }
    print_verification(game, outcome.final_state);
    return outcome.converged ? 0 : 2;
  }
  throw std::invalid_argument("method must be dag, tree, or dynamics");
}

int cmd_reduce(const std::string& graph_path, std::uint64_t cap) {
  const auto adjacency = adjacency_from_json(load_json_file(graph_path));
  const Game game = coloring_reduction(adjacency);
  const auto [state, total] = optimal_pne_total_payoff(game, cap);
  // Payoffs here are sums of negated adjacency entries, so zero is exact.
  const bool colorable = total == 0.0;
  std::cout << "optimal_pne_total_payoff: " << total << '\n';
  std::cout << "state: ";
  print_state(std::cout, state);
  std::cout << '\n';
  std::cout << "three_colorable: " << (colorable ? "true" : "false") << '\n';
  return 0;
}

int cmd_wireless(int users, int channels, double region_length, std::uint64_t seed,
                 const std::string& scenario_path, const std::string& game_path) {
  WirelessParams params;
  params.n_users = users;
  params.n_channels = channels;
  params.region_length_m = region_length;
  Rng rng(seed);
  const auto [scenario, game] = gen_wireless(params, rng);
  std::cout << "generated wireless scenario: N=" << users << " R=" << channels
            << " L=" << region_length << "m\n";
  std::cout << "resource_homogeneous: " << (game.resource_homogeneous() ? "true" : "false")
            << '\n';
  std::cout << "interference_asymmetry: " << interference_asymmetry(game.spatial()) << '\n';
  if (!scenario_path.empty()) {
    save_json_file(scenario_path, wireless_scenario_to_json(scenario));
    std::cout << "scenario written to " << scenario_path << '\n';
  }
  if (!game_path.empty()) {
    save_json_file(game_path, game_to_json(game));
    std::cout << "game written to " << game_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graphical congestion games with weighted edges"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int trials = 1000;
  int max_slots = 10000;
  int fast_threshold = 10;
  std::string out_path;
  std::string format = "both";

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a random game instance");
  std::string gen_kind = "undirected-weighted";
  int gen_players = 6;
  int gen_resources = 3;
  std::string gen_payoffs = "heterogeneous";
  double gen_edge_prob = 0.5;
  generate->add_option("--kind", gen_kind,
                       "undirected-uniform|undirected-weighted|directed-weighted|tree|dag|odd-cycle");
  generate->add_option("--players", gen_players);
  generate->add_option("--resources", gen_resources);
  generate->add_option("--payoffs", gen_payoffs, "heterogeneous|homogeneous");
  generate->add_option("--edge-prob", gen_edge_prob, "DAG edge probability");
  generate->add_option("--seed", seed);
  generate->add_option("--out", out_path)->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "Run better-response dynamics on a game file");
  std::string run_game;
  std::string run_init = "all-one";
  std::string run_trajectory;
  run_cmd->add_option("--game", run_game)->required();
  run_cmd->add_option("--seed", seed);
  run_cmd->add_option("--max-slots", max_slots);
  run_cmd->add_option("--init", run_init, "all-one|random");
  run_cmd->add_option("--trajectory", run_trajectory, "JSON-lines trajectory output path");

  // batch
  auto* batch = app.add_subcommand("batch", "Run a batch of randomized trials");
  std::string batch_config;
  std::string batch_kind = "random-batch";
  int batch_players = 6;
  int batch_resources = 3;
  std::string batch_spatial = "undirected-weighted";
  std::string batch_payoffs = "heterogeneous";
  std::string batch_init = "default";
  double batch_length = 200.0;
  batch->add_option("--config", batch_config, "JSON config file (overrides other flags)");
  batch->add_option("--kind", batch_kind, "random-batch|wireless-batch");
  batch->add_option("--players", batch_players);
  batch->add_option("--resources", batch_resources);
  batch->add_option("--spatial", batch_spatial);
  batch->add_option("--payoffs", batch_payoffs);
  batch->add_option("--init", batch_init, "all-one|random");
  batch->add_option("--region-length", batch_length, "wireless region length in meters");
  batch->add_option("--trials", trials);
  batch->add_option("--seed", seed);
  batch->add_option("--max-slots", max_slots);
  batch->add_option("--fast-threshold", fast_threshold);
  batch->add_option("--out", out_path, "output prefix");
  batch->add_option("--format", format, "csv|json|both");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Batch per axis value, CSV summary");
  std::string sweep_axis = "players";
  std::vector<double> sweep_values;
  sweep_cmd->add_option("--axis", sweep_axis, "players|resources|region-length");
  sweep_cmd->add_option("--values", sweep_values, "axis values")->required()->delimiter(',');
  sweep_cmd->add_option("--config", batch_config, "JSON config file for the template");
  sweep_cmd->add_option("--kind", batch_kind);
  sweep_cmd->add_option("--players", batch_players);
  sweep_cmd->add_option("--resources", batch_resources);
  sweep_cmd->add_option("--spatial", batch_spatial);
  sweep_cmd->add_option("--payoffs", batch_payoffs);
  sweep_cmd->add_option("--init", batch_init);
  sweep_cmd->add_option("--region-length", batch_length);
  sweep_cmd->add_option("--trials", trials);
  sweep_cmd->add_option("--seed", seed);
  sweep_cmd->add_option("--max-slots", max_slots);
  sweep_cmd->add_option("--fast-threshold", fast_threshold);
  sweep_cmd->add_option("--out", out_path);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Exhaustive state-space report");
  std::string analyze_game, analyze_dot, analyze_json;
  std::uint64_t cap = kDefaultStateCap;
  analyze->add_option("--game", analyze_game)->required();
  analyze->add_option("--cap", cap, "state-count cap");
  analyze->add_option("--dot", analyze_dot, "DOT export path");
  analyze->add_option("--json", analyze_json, "JSON export path");

  // solve
  auto* solve = app.add_subcommand("solve", "Constructive solver or dynamics");
  std::string solve_game, solve_method = "dag";
  solve->add_option("--game", solve_game)->required();
  solve->add_option("--method", solve_method, "dag|tree|dynamics");
  solve->add_option("--seed", seed);
  solve->add_option("--max-slots", max_slots);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "3-colorability via the optimal equilibrium");
  std::string reduce_graph;
  reduce->add_option("--graph", reduce_graph)->required();
  reduce->add_option("--cap", cap);

  // wireless
  auto* wireless = app.add_subcommand("wireless", "Generate a spectrum-sharing scenario");
  int wl_users = 20;
  int wl_channels = 5;
  double wl_length = 200.0;
  std::string wl_scenario, wl_game;
  wireless->add_option("--users", wl_users);
  wireless->add_option("--channels", wl_channels);
  wireless->add_option("--length", wl_length, "region length in meters");
  wireless->add_option("--seed", seed);
  wireless->add_option("--scenario-out", wl_scenario);
  wireless->add_option("--game-out", wl_game);

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      return cmd_generate(gen_kind, gen_players, gen_resources, gen_payoffs, gen_edge_prob, seed,
                          out_path);
    }
    if (run_cmd->parsed()) {
      return cmd_run(run_game, seed, max_slots, run_init, run_trajectory);
    }
    if (batch->parsed() || sweep_cmd->parsed()) {
      std::string init = batch_init;
      if (init == "default") init = batch_kind == "wireless-batch" ? "random" : "all-one";
      ExperimentConfig config =
          config_from_cli(batch_config, batch_kind, batch_players, batch_resources, batch_spatial,
                          batch_payoffs, init, trials, seed, max_slots, fast_threshold,
                          batch_length);
      if (batch->parsed()) return cmd_batch(config, out_path, format);
      return cmd_sweep(config, sweep_axis, sweep_values, out_path);
    }
    if (analyze->parsed()) return cmd_analyze(analyze_game, cap, analyze_dot, analyze_json);
    if (solve->parsed()) return cmd_solve(solve_game, solve_method, seed, max_slots);
    if (reduce->parsed()) return cmd_reduce(reduce_graph, cap);
    if (wireless->parsed()) {
      return cmd_wireless(wl_users, wl_channels, wl_length, seed, wl_scenario, wl_game);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
