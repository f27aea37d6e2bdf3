#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcgwe/game.hpp"
#include "gcgwe/generators.hpp"

namespace gcgwe {

enum class SpatialKind { UndirectedUniform, UndirectedWeighted, DirectedWeighted };
enum class PayoffKind { Heterogeneous, Homogeneous };
enum class InitialKind { AllResourceOne, Random };

SpatialKind spatial_kind_from_string(const std::string& name);
PayoffKind payoff_kind_from_string(const std::string& name);
std::string to_string(SpatialKind kind);
std::string to_string(PayoffKind kind);

/// One batch of independent trials. Trial t draws its streams from
/// derive_seed(base_seed, t): substream 0 generates the instance, substream 1
/// drives the dynamics, substream 2 draws a random initial state when asked.
struct ExperimentConfig {
  std::string kind = "random-batch";  // random-batch | wireless-batch
  int n_players = 6;
  int n_resources = 3;
  SpatialKind spatial = SpatialKind::UndirectedWeighted;
  PayoffKind payoffs = PayoffKind::Heterogeneous;
  InitialKind initial = InitialKind::AllResourceOne;
  WirelessParams wireless;  // used when kind == "wireless-batch"
  int trials = 1000;
  std::uint64_t base_seed = 0;
  int max_slots = 10000;
  int fast_threshold = 10;
  std::string out_prefix;       // optional: write <prefix>.csv / <prefix>.json
  std::string format = "both";  // csv | json | both

  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  int slots = 0;  // meaningful only when converged
};

struct BatchReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  int n_converged = 0;
  double converged_fraction = 0.0;
  double fast_fraction = 0.0;
  // Statistics over converged trials only; non-convergent trials are
  // excluded from slot statistics.
  double mean_slots = 0.0;
  double median_slots = 0.0;
  int max_slots_observed = 0;
  std::vector<std::pair<int, int>> histogram;  // (slots, count), unit bins, ascending
};

/// Runs the batch; trials execute concurrently but the report is a
/// deterministic function of the config.
BatchReport run_batch(const ExperimentConfig& config);

enum class SweepAxis { Players, Resources, RegionLength };

struct SweepPoint {
  double value = 0.0;
  BatchReport report;
};

/// One batch per axis value, holding everything else at the template config.
std::vector<SweepPoint> sweep(const ExperimentConfig& config_template, SweepAxis axis,
                              const std::vector<double>& values);

/// CSV with header: trial,seed,converged,slots (slots blank on timeout).
void write_trials_csv(std::ostream& out, const BatchReport& report);

/// CSV with header: axis,value,trials,n_converged,converged_fraction,
/// fast_fraction,mean_slots.
void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepPoint>& points);

/// Self-describing aggregate: embeds the config and per-trial seeds.
nlohmann::json batch_report_to_json(const BatchReport& report);

nlohmann::json experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

/// Spearman rank correlation with average ranks on ties; 0 when either side
/// is constant.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace gcgwe
