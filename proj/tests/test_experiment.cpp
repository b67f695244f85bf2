#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "fclust/experiment.hpp"

using namespace fclust;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.instance_spec = Balanced{120, 3};
  config.instance_seed = 1;
  config.deltas = {1.0, 0.8};
  config.seeds = {1, 2, 3};
  config.timing = false;
  return config;
}

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("config round-trips from JSON with overrides") {
  const std::string text = R"({
    "instance": {"type": "gap", "n": 200, "k": 3, "h": 2, "b": 0.2},
    "instance_seed": 9,
    "deltas": [0.5, 1.0],
    "seeds": [4, 5],
    "constants": {"profile": "desk", "c0": 5.0, "scale": 2.0},
    "algo": "gap",
    "gap_h": 2,
    "b": 0.2,
    "format": "ndjson",
    "timing": false,
    "jobs": 2
  })";
  const ExperimentConfig config = ExperimentConfig::from_json_text(text);
  config.validate();
  CHECK(config.deltas == std::vector<double>{0.5, 1.0});
  CHECK(config.seeds == std::vector<std::uint64_t>{4, 5});
  CHECK(config.constants.c0 == 5.0);
  CHECK(config.constants.scale == 2.0);
  CHECK(config.constants_profile == "custom");
  CHECK(config.algo == Algo::gap);
  CHECK(config.format == OutputFormat::ndjson);
  CHECK(config.jobs == 2);
  CHECK_FALSE(config.timing);
}

TEST_CASE("bad configs name the offending field") {
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("{\"algo\": \"fastest\"}"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), ConfigError);

  ExperimentConfig config = small_config();
  config.deltas = {};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = small_config();
  config.deltas = {1.5};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = small_config();
  config.instance_spec.reset();
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = small_config();
  config.seeds = {};
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("one row per delta-seed cell, in canonical order") {
  const std::vector<ResultRow> rows = run_experiment(small_config());
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool ordered = rows[i - 1].delta < rows[i].delta ||
                         (rows[i - 1].delta == rows[i].delta && rows[i - 1].seed < rows[i].seed);
    CHECK(ordered);
  }
  for (const ResultRow& row : rows) {
    CHECK(row.n == 120);
    CHECK(row.k == 3);
    CHECK(row.distinct_pairs <= 120ULL * 119 / 2);
    if (row.delta == 1.0) CHECK(row.misclassification == 0.0);
  }
}

TEST_CASE("reruns are byte-identical without timing") {
  const std::string a = rows_to_text(run_experiment(small_config()), OutputFormat::csv, false);
  const std::string b = rows_to_text(run_experiment(small_config()), OutputFormat::csv, false);
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) ==
        "n,k,delta,seed,distinct_pairs,total_calls,misclassification,exact,"
        "unclustered_count,wall_ms,recovered_sizes");
}

TEST_CASE("parallel execution matches serial output") {
  ExperimentConfig serial = small_config();
  ExperimentConfig parallel = small_config();
  parallel.jobs = 4;
  CHECK(rows_to_text(run_experiment(serial), OutputFormat::csv, false) ==
        rows_to_text(run_experiment(parallel), OutputFormat::csv, false));
}

TEST_CASE("ndjson rows carry every column") {
  ResultRow row;
  row.n = 10;
  row.k = 2;
  row.delta = 0.5;
  row.seed = 7;
  row.recovered_sizes = {6, 4};
  const std::string line = row_to_ndjson(row, false);
  for (const char* field : {"\"n\"", "\"k\"", "\"delta\"", "\"seed\"", "\"distinct_pairs\"",
                            "\"total_calls\"", "\"misclassification\"", "\"exact\"",
                            "\"unclustered_count\"", "\"wall_ms\"", "\"recovered_sizes\""})
    CHECK(line.find(field) != std::string::npos);
}

TEST_CASE("summary aggregates per delta") {
  const std::vector<ResultRow> rows = run_experiment(small_config());
  const std::string summary = summary_csv(rows);
  // header plus one line per distinct delta
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);
  CHECK(summary.find("exact_rate") != std::string::npos);
}

TEST_CASE("balanced algo rows use the standalone pipeline") {
  ExperimentConfig config = small_config();
  config.algo = Algo::balanced;
  config.balance = 1.0;
  config.deltas = {1.0};
  config.seeds = {1};
  const std::vector<ResultRow> rows = run_experiment(config);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].misclassification == 0.0);
  CHECK(rows[0].exact);
}

TEST_SUITE_END();
