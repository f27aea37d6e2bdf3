#include "gcgwe/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gcgwe/dynamics.hpp"

namespace gcgwe {

SpatialKind spatial_kind_from_string(const std::string& name) {
  if (name == "undirected-uniform") return SpatialKind::UndirectedUniform;
  if (name == "undirected-weighted") return SpatialKind::UndirectedWeighted;
  if (name == "directed-weighted") return SpatialKind::DirectedWeighted;
  throw std::invalid_argument("unknown spatial generator: " + name);
}

PayoffKind payoff_kind_from_string(const std::string& name) {
  if (name == "heterogeneous") return PayoffKind::Heterogeneous;
  if (name == "homogeneous") return PayoffKind::Homogeneous;
  throw std::invalid_argument("unknown payoff family: " + name);
}

std::string to_string(SpatialKind kind) {
  switch (kind) {
    case SpatialKind::UndirectedUniform: return "undirected-uniform";
    case SpatialKind::UndirectedWeighted: return "undirected-weighted";
    case SpatialKind::DirectedWeighted: return "directed-weighted";
  }
  return "?";
}

std::string to_string(PayoffKind kind) {
  return kind == PayoffKind::Heterogeneous ? "heterogeneous" : "homogeneous";
}

void ExperimentConfig::validate() const {
  if (kind != "random-batch" && kind != "wireless-batch") {
    throw std::invalid_argument("ExperimentConfig: kind must be random-batch or wireless-batch");
  }
  if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
  if (max_slots < 1) throw std::invalid_argument("ExperimentConfig: max_slots must be >= 1");
  if (fast_threshold < 0 || fast_threshold > max_slots) {
    throw std::invalid_argument("ExperimentConfig: fast_threshold must lie in [0, max_slots]");
  }
  if (kind == "random-batch" && (n_players < 1 || n_resources < 1)) {
    throw std::invalid_argument("ExperimentConfig: need at least one player and one resource");
  }
  if (format != "csv" && format != "json" && format != "both") {
    throw std::invalid_argument("ExperimentConfig: format must be csv, json, or both");
  }
}

namespace {

Game generate_instance(const ExperimentConfig& config, Rng& rng) {
  if (config.kind == "wireless-batch") {
    return gen_wireless(config.wireless, rng).second;
  }
  SpatialMatrix spatial = [&] {
    switch (config.spatial) {
      case SpatialKind::UndirectedUniform: return gen_undirected_uniform(config.n_players, rng);
      case SpatialKind::UndirectedWeighted: return gen_undirected_weighted(config.n_players, rng);
      case SpatialKind::DirectedWeighted: return gen_directed_weighted(config.n_players, rng);
    }
    throw std::logic_error("unreachable");
  }();
  auto payoffs = config.payoffs == PayoffKind::Heterogeneous
                     ? gen_heterogeneous_payoffs(config.n_players, config.n_resources, rng)
                     : gen_homogeneous_payoffs(config.n_players, config.n_resources);
  return Game::uniform_availability(std::move(spatial), config.n_resources, std::move(payoffs));
}

TrialRecord run_trial(const ExperimentConfig& config, int trial) {
  const std::uint64_t trial_seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(trial));
  Rng gen_rng(derive_seed(trial_seed, 0));
  const Game game = generate_instance(config, gen_rng);

  State initial;
  if (config.initial == InitialKind::Random) {
    Rng init_rng(derive_seed(trial_seed, 2));
    initial.resize(game.n_players());
    for (int p = 0; p < game.n_players(); ++p) {
      const auto& avail = game.available(p);
      initial[p] = avail[init_rng.below(avail.size())];
    }
  } else {
    initial = game.initial_state();
  }

  UpdateRule rule;
  rule.seed = derive_seed(trial_seed, 1);
  rule.max_slots = config.max_slots;
  const RunOutcome outcome = run(game, std::move(initial), rule);

  TrialRecord record;
  record.trial = trial;
  record.seed = trial_seed;
  record.converged = outcome.converged;
  record.slots = outcome.slots;
  return record;
}

}  // namespace

BatchReport run_batch(const ExperimentConfig& config) {
  config.validate();

  BatchReport report;
  report.config = config;
  report.trials.resize(config.trials);

  const unsigned hw = std::thread::hardware_concurrency();
  const int n_workers = std::max(1, std::min<int>(hw ? static_cast<int>(hw) : 1, config.trials));
  std::atomic<int> next_trial{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int t = next_trial.fetch_add(1);
      if (t >= config.trials) break;
      try {
        report.trials[t] = run_trial(config, t);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Deterministic ordered reduce over the records.
  std::vector<int> converged_slots;
  int fast = 0;
  for (const TrialRecord& r : report.trials) {
    if (!r.converged) continue;
    converged_slots.push_back(r.slots);
    if (r.slots <= config.fast_threshold) ++fast;
  }
  report.n_converged = static_cast<int>(converged_slots.size());
  report.converged_fraction = static_cast<double>(report.n_converged) / config.trials;
  report.fast_fraction = static_cast<double>(fast) / config.trials;
  if (!converged_slots.empty()) {
    report.mean_slots =
        std::accumulate(converged_slots.begin(), converged_slots.end(), 0.0) /
        static_cast<double>(converged_slots.size());
    std::vector<int> sorted = converged_slots;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    report.median_slots = sorted.size() % 2 == 1
                              ? sorted[mid]
                              : 0.5 * (sorted[mid - 1] + sorted[mid]);
    report.max_slots_observed = sorted.back();
    std::map<int, int> bins;
    for (int s : converged_slots) ++bins[s];
    report.histogram.assign(bins.begin(), bins.end());
  }
  return report;
}

std::vector<SweepPoint> sweep(const ExperimentConfig& config_template, SweepAxis axis,
                              const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("sweep: need at least one axis value");
  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (double value : values) {
    ExperimentConfig config = config_template;
    switch (axis) {
      case SweepAxis::Players:
        config.n_players = static_cast<int>(value);
        config.wireless.n_users = static_cast<int>(value);
        break;
      case SweepAxis::Resources:
        config.n_resources = static_cast<int>(value);
        config.wireless.n_channels = static_cast<int>(value);
        break;
      case SweepAxis::RegionLength:
        config.wireless.region_length_m = value;
        break;
    }
    points.push_back({value, run_batch(config)});
  }
  return points;
}

void write_trials_csv(std::ostream& out, const BatchReport& report) {
  out << "trial,seed,converged,slots\n";
  for (const TrialRecord& r : report.trials) {
    out << r.trial << ',' << r.seed << ',' << (r.converged ? "true" : "false") << ',';
    if (r.converged) out << r.slots;
    out << '\n';
  }
}

namespace {

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Players: return "players";
    case SweepAxis::Resources: return "resources";
    case SweepAxis::RegionLength: return "region_length";
  }
  return "?";
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(15);
  out << v;
  return out.str();
}

}  // namespace

void write_sweep_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepPoint>& points) {
  out << "axis,value,trials,n_converged,converged_fraction,fast_fraction,mean_slots\n";
  const std::string name = axis_name(axis);
  for (const SweepPoint& p : points) {
    out << name << ',' << format_double(p.value) << ',' << p.report.config.trials << ','
        << p.report.n_converged << ',' << format_double(p.report.converged_fraction) << ','
        << format_double(p.report.fast_fraction) << ',' << format_double(p.report.mean_slots)
        << '\n';
  }
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& config) {
  // Output destinations are deliberately not embedded: the report describes
  // the experiment, and two runs differing only in where they write must
  // stay byte-identical.
  nlohmann::json j{{"kind", config.kind},
                   {"trials", config.trials},
                   {"base_seed", config.base_seed},
                   {"max_slots", config.max_slots},
                   {"fast_threshold", config.fast_threshold},
                   {"initial", config.initial == InitialKind::Random ? "random" : "all_one"}};
  if (config.kind == "wireless-batch") {
    j["wireless"] = {{"n_users", config.wireless.n_users},
                     {"n_channels", config.wireless.n_channels},
                     {"region_length_m", config.wireless.region_length_m},
                     {"power_mw", config.wireless.power_mw},
                     {"bandwidth_hz", config.wireless.bandwidth_hz},
                     {"attenuation", config.wireless.attenuation},
                     {"noise_mw_per_hz", config.wireless.noise_mw_per_hz}};
  } else {
    j["n_players"] = config.n_players;
    j["n_resources"] = config.n_resources;
    j["spatial"] = to_string(config.spatial);
    j["payoffs"] = to_string(config.payoffs);
  }
  return j;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  config.kind = j.value("kind", std::string("random-batch"));
  config.trials = j.value("trials", 1000);
  config.base_seed = j.value("base_seed", std::uint64_t{0});
  config.max_slots = j.value("max_slots", 10000);
  config.fast_threshold = j.value("fast_threshold", 10);
  config.out_prefix = j.value("out_prefix", std::string());
  config.format = j.value("format", std::string("both"));
  const std::string initial =
      j.value("initial", config.kind == "wireless-batch" ? "random" : "all_one");
  if (initial == "random") {
    config.initial = InitialKind::Random;
  } else if (initial == "all_one") {
    config.initial = InitialKind::AllResourceOne;
  } else {
    throw std::invalid_argument("config: initial must be all_one or random");
  }
  if (config.kind == "wireless-batch") {
    if (j.contains("wireless")) {
      const auto& w = j.at("wireless");
      config.wireless.n_users = w.value("n_users", 20);
      config.wireless.n_channels = w.value("n_channels", 5);
      config.wireless.region_length_m = w.value("region_length_m", 200.0);
      config.wireless.power_mw = w.value("power_mw", 100.0);
      config.wireless.bandwidth_hz = w.value("bandwidth_hz", 20e6);
      config.wireless.attenuation = w.value("attenuation", 4.0);
      config.wireless.noise_mw_per_hz = w.value("noise_mw_per_hz", 3.981071705534973e-18);
    }
  } else {
    config.n_players = j.value("n_players", 6);
    config.n_resources = j.value("n_resources", 3);
    config.spatial = spatial_kind_from_string(j.value("spatial", std::string("undirected-weighted")));
    config.payoffs = payoff_kind_from_string(j.value("payoffs", std::string("heterogeneous")));
  }
  config.validate();
  return config;
}

nlohmann::json batch_report_to_json(const BatchReport& report) {
  nlohmann::json trials = nlohmann::json::array();
  for (const TrialRecord& r : report.trials) {
    nlohmann::json t{{"trial", r.trial}, {"seed", r.seed}, {"converged", r.converged}};
    if (r.converged) {
      t["slots"] = r.slots;
    } else {
      t["slots"] = nullptr;
    }
    trials.push_back(std::move(t));
  }
  nlohmann::json histogram = nlohmann::json::array();
  for (const auto& [slots, count] : report.histogram) {
    histogram.push_back(nlohmann::json::array({slots, count}));
  }
  return nlohmann::json{{"config", experiment_config_to_json(report.config)},
                        {"trials", std::move(trials)},
                        {"aggregates",
                         {{"n_converged", report.n_converged},
                          {"converged_fraction", report.converged_fraction},
                          {"fast_fraction", report.fast_fraction},
                          {"mean_slots", report.mean_slots},
                          {"median_slots", report.median_slots},
                          {"max_slots", report.max_slots_observed},
                          {"histogram", std::move(histogram)}}}};
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("spearman: need two sequences of equal length >= 2");
  }
  const auto ranks = [](const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
      i = j + 1;
    }
    return rank;
  };
  const std::vector<double> rx = ranks(xs);
  const std::vector<double> ry = ranks(ys);
  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += rx[i];
    mean_y += ry[i];
  }
  mean_x /= n;
  mean_y /= n;
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = rx[i] - mean_x;
    const double dy = ry[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) return 0.0;
  return cov / std::sqrt(var_x * var_y);
}

}  // namespace gcgwe
