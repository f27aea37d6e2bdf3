#include <doctest.h>

#include <sstream>
#include <vector>

#include "gcgwe/experiment.hpp"
#include "gcgwe/serialization.hpp"

using namespace gcgwe;

TEST_CASE("single-player homogeneous batch converges in zero slots") {
  ExperimentConfig config;
  config.n_players = 1;
  config.n_resources = 2;
  config.payoffs = PayoffKind::Homogeneous;
  config.trials = 1;
  const BatchReport report = run_batch(config);
  CHECK(report.n_converged == 1);
  CHECK(report.trials[0].slots == 0);
  CHECK(report.fast_fraction == 1.0);
  CHECK(report.mean_slots == 0.0);
}

TEST_CASE("undirected weighted heterogeneous batch fully converges") {
  ExperimentConfig config;
  config.trials = 200;
  config.base_seed = 99;
  const BatchReport report = run_batch(config);
  CHECK(report.n_converged == 200);
  CHECK(report.converged_fraction == 1.0);
  CHECK(report.mean_slots > 3.0);
  CHECK(report.mean_slots < 15.0);
}

TEST_CASE("aggregates are consistent with the per-trial records") {
  ExperimentConfig config;
  config.spatial = SpatialKind::DirectedWeighted;
  config.trials = 300;
  config.base_seed = 7;
  config.max_slots = 2000;
  const BatchReport report = run_batch(config);

  int converged = 0, fast = 0, hist_total = 0;
  double slot_sum = 0.0;
  for (const TrialRecord& r : report.trials) {
    if (r.converged) {
      ++converged;
      slot_sum += r.slots;
      if (r.slots <= config.fast_threshold) ++fast;
    }
  }
  for (const auto& [slots, count] : report.histogram) hist_total += count;

  CHECK(report.n_converged == converged);
  CHECK(hist_total == converged);
  CHECK(report.fast_fraction == doctest::Approx(static_cast<double>(fast) / config.trials));
  if (converged > 0) {
    CHECK(report.mean_slots == doctest::Approx(slot_sum / converged));
    CHECK(report.max_slots_observed <= config.max_slots);
  }
}

TEST_CASE("identical configs give byte-identical outputs") {
  ExperimentConfig config;
  config.trials = 50;
  config.base_seed = 4242;
  const BatchReport a = run_batch(config);
  const BatchReport b = run_batch(config);

  std::ostringstream csv_a, csv_b;
  write_trials_csv(csv_a, a);
  write_trials_csv(csv_b, b);
  CHECK(csv_a.str() == csv_b.str());
  CHECK(batch_report_to_json(a).dump(2) == batch_report_to_json(b).dump(2));
}

TEST_CASE("trial seeds follow the documented derivation") {
  ExperimentConfig config;
  config.trials = 5;
  config.base_seed = 31337;
  const BatchReport report = run_batch(config);
  for (int t = 0; t < 5; ++t) {
    CHECK(report.trials[t].trial == t);
    CHECK(report.trials[t].seed == derive_seed(31337, static_cast<std::uint64_t>(t)));
  }
}

TEST_CASE("single-value sweep equals a direct batch") {
  ExperimentConfig config;
  config.trials = 40;
  config.base_seed = 11;
  const auto points = sweep(config, SweepAxis::Players, {6.0});
  REQUIRE(points.size() == 1);
  const BatchReport direct = run_batch(config);
  CHECK(points[0].report.n_converged == direct.n_converged);
  CHECK(points[0].report.fast_fraction == direct.fast_fraction);

  std::ostringstream csv;
  write_sweep_csv(csv, SweepAxis::Players, points);
  const std::string text = csv.str();
  CHECK(text.find("players,6") != std::string::npos);
  CHECK(text.rfind("axis,value,trials,n_converged", 0) == 0);
}

TEST_CASE("wireless batch runs with a random initial channel") {
  ExperimentConfig config;
  config.kind = "wireless-batch";
  config.initial = InitialKind::Random;
  config.wireless.n_users = 8;
  config.wireless.n_channels = 3;
  config.wireless.region_length_m = 400.0;
  config.trials = 20;
  config.max_slots = 500;
  const BatchReport report = run_batch(config);
  CHECK(report.trials.size() == 20);
  CHECK(report.n_converged >= 1);  // large region: most instances settle
}

TEST_CASE("config json round trip") {
  ExperimentConfig config;
  config.kind = "wireless-batch";
  config.initial = InitialKind::Random;
  config.wireless.n_users = 10;
  config.wireless.region_length_m = 250.0;
  config.trials = 123;
  config.base_seed = 55;
  config.max_slots = 777;
  config.fast_threshold = 9;
  const ExperimentConfig back = experiment_config_from_json(experiment_config_to_json(config));
  CHECK(back.kind == config.kind);
  CHECK(back.trials == config.trials);
  CHECK(back.base_seed == config.base_seed);
  CHECK(back.max_slots == config.max_slots);
  CHECK(back.fast_threshold == config.fast_threshold);
  CHECK(back.wireless.n_users == config.wireless.n_users);
  CHECK(back.wireless.region_length_m == config.wireless.region_length_m);
  CHECK(back.initial == InitialKind::Random);

  ExperimentConfig plain;
  plain.spatial = SpatialKind::DirectedWeighted;
  plain.payoffs = PayoffKind::Homogeneous;
  plain.n_players = 9;
  const ExperimentConfig plain_back =
      experiment_config_from_json(experiment_config_to_json(plain));
  CHECK(plain_back.spatial == SpatialKind::DirectedWeighted);
  CHECK(plain_back.payoffs == PayoffKind::Homogeneous);
  CHECK(plain_back.n_players == 9);
}

TEST_CASE("config validation") {
  ExperimentConfig config;
  config.trials = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.trials = 10;
  config.fast_threshold = 20000;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.fast_threshold = 10;
  config.kind = "bogus";
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("spearman correlation") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {9, 7, 5, 3}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3, 4}, {5, 5, 5, 5}) == 0.0);  // constant side
  // Monotone but nonlinear still ranks perfectly.
  CHECK(spearman({1, 2, 3, 4, 5}, {1, 8, 27, 64, 125}) == doctest::Approx(1.0));
  // Ties get averaged ranks; a weak positive trend stays positive.
  CHECK(spearman({1, 2, 3, 4, 5, 6}, {1, 1, 2, 2, 3, 3}) > 0.9);
}
