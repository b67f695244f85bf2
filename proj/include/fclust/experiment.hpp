#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fclust/constants.hpp"
#include "fclust/eval.hpp"
#include "fclust/oracle.hpp"

namespace fclust {

enum class Algo { full, balanced, gap };
enum class OutputFormat { csv, ndjson };

/// One batch of runs: a single instance crossed with every (delta, seed)
/// pair. Parsed from a JSON config file; CLI flags override fields.
struct ExperimentConfig {
  std::optional<InstanceSpec> instance_spec;   // exactly one of spec / file
  std::optional<std::string> instance_file;
  std::uint64_t instance_seed = 1;

  std::vector<double> deltas;
  std::vector<std::uint64_t> seeds;

  AlgorithmConstants constants = AlgorithmConstants::desk_defaults();
  std::string constants_profile = "desk";  // "paper" | "desk" | "custom"

  Algo algo = Algo::full;
  double balance = 1.0;  // b for the balanced / gap algorithms
  int gap_h = 1;         // h for the gap algorithm
  int clusters_hint = 0; // k passed to the algorithms; 0 = instance k

  std::string out_path;  // empty = stdout
  OutputFormat format = OutputFormat::csv;
  bool timing = true;    // when false the wall-time column is zeroed
  int jobs = 1;
  bool forgive_below_floor = true;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
};

/// One (instance, delta, seed) cell.
struct ResultRow {
  long n = 0;
  int k = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t distinct_pairs = 0;
  std::uint64_t total_calls = 0;
  double misclassification = 0.0;
  bool exact = false;
  long unclustered_count = 0;
  double wall_ms = 0.0;
  std::vector<long> recovered_sizes;  // descending
};

/// Runs every cell of the config. Rows come back sorted by (delta, seed)
/// regardless of execution order, and are byte-stable given the config
/// (modulo the wall-time column).
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

std::string csv_header();
std::string row_to_csv(const ResultRow& row, bool timing);
std::string row_to_ndjson(const ResultRow& row, bool timing);
std::string rows_to_text(const std::vector<ResultRow>& rows, OutputFormat format, bool timing);

/// Mean/std of the numeric columns per delta, CSV-formatted, for plotting.
std::string summary_csv(const std::vector<ResultRow>& rows);

}  // namespace fclust
