#include "fclust/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "fclust/algorithms.hpp"

namespace fclust {

namespace {

using nlohmann::json;

InstanceSpec spec_from_json(const json& j) {
  const std::string type = j.value("type", "");
  if (type == "exact") {
    return ExactSizes{j.at("sizes").get<std::vector<long>>()};
  } else if (type == "balanced") {
    return Balanced{j.at("n").get<long>(), j.at("k").get<int>()};
  } else if (type == "bbalanced") {
    return BBalanced{j.at("n").get<long>(), j.at("k").get<int>(), j.at("b").get<double>()};
  } else if (type == "gap") {
    return GapShaped{j.at("n").get<long>(), j.at("k").get<int>(), j.at("h").get<int>(),
                     j.at("b").get<double>()};
  }
  throw ConfigError("instance.type must be exact | balanced | bbalanced | gap");
}

void constants_from_json(const json& j, ExperimentConfig& config) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "paper") {
      config.constants = AlgorithmConstants::paper_defaults();
    } else if (name == "desk") {
      config.constants = AlgorithmConstants::desk_defaults();
    } else {
      throw ConfigError("constants: unknown profile '" + name + "'");
    }
    config.constants_profile = name;
    return;
  }
  if (!j.is_object()) throw ConfigError("constants: expected profile name or object");
  AlgorithmConstants c = AlgorithmConstants::desk_defaults();
  if (j.contains("profile")) {
    const std::string base = j.at("profile").get<std::string>();
    if (base == "paper") c = AlgorithmConstants::paper_defaults();
    else if (base != "desk") throw ConfigError("constants.profile must be paper | desk");
  }
  if (j.contains("c0")) c.c0 = j.at("c0").get<double>();
  if (j.contains("sample_mult")) c.sample_mult = j.at("sample_mult").get<double>();
  if (j.contains("grow_size_mult")) c.grow_size_mult = j.at("grow_size_mult").get<double>();
  if (j.contains("enum_seed_mult")) c.enum_seed_mult = j.at("enum_seed_mult").get<double>();
  if (j.contains("bias_trials_mult")) c.bias_trials_mult = j.at("bias_trials_mult").get<double>();
  if (j.contains("stop_size_mult")) c.stop_size_mult = j.at("stop_size_mult").get<double>();
  if (j.contains("scale")) c.scale = j.at("scale").get<double>();
  config.constants = c;
  config.constants_profile = "custom";
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!instance_spec.has_value() && !instance_file.has_value())
    throw ConfigError("instance: specify an instance spec or a file path");
  if (instance_spec.has_value() && instance_file.has_value())
    throw ConfigError("instance: spec and file are mutually exclusive");
  if (deltas.empty()) throw ConfigError("deltas: list must be nonempty");
  for (double d : deltas)
    if (!(d > 0.0) || d > 1.0) throw ConfigError("deltas: every delta must lie in (0, 1]");
  if (seeds.empty()) throw ConfigError("seeds: list must be nonempty");
  if (balance <= 0.0 || balance > 1.0) throw ConfigError("b: must lie in (0, 1]");
  if (gap_h < 1) throw ConfigError("gap_h: must be at least 1");
  if (jobs < 1) throw ConfigError("jobs: must be at least 1");
  try {
    constants.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("constants: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  ExperimentConfig config;
  try {
    if (j.contains("instance")) {
      const json& inst = j.at("instance");
      if (inst.contains("file"))
        config.instance_file = inst.at("file").get<std::string>();
      else
        config.instance_spec = spec_from_json(inst);
    }
    if (j.contains("instance_seed")) config.instance_seed = j.at("instance_seed").get<std::uint64_t>();
    if (j.contains("deltas")) config.deltas = j.at("deltas").get<std::vector<double>>();
    if (j.contains("seeds")) config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("constants")) constants_from_json(j.at("constants"), config);
    if (j.contains("scale")) config.constants.scale = j.at("scale").get<double>();
    if (j.contains("algo")) {
      const std::string algo = j.at("algo").get<std::string>();
      if (algo == "full") config.algo = Algo::full;
      else if (algo == "balanced") config.algo = Algo::balanced;
      else if (algo == "gap") config.algo = Algo::gap;
      else throw ConfigError("algo: must be full | balanced | gap");
    }
    if (j.contains("b")) config.balance = j.at("b").get<double>();
    if (j.contains("gap_h")) config.gap_h = j.at("gap_h").get<int>();
    if (j.contains("k")) config.clusters_hint = j.at("k").get<int>();
    if (j.contains("out")) config.out_path = j.at("out").get<std::string>();
    if (j.contains("format")) {
      const std::string fmt = j.at("format").get<std::string>();
      if (fmt == "csv") config.format = OutputFormat::csv;
      else if (fmt == "ndjson") config.format = OutputFormat::ndjson;
      else throw ConfigError("format: must be csv | ndjson");
    }
    if (j.contains("timing")) config.timing = j.at("timing").get<bool>();
    if (j.contains("jobs")) config.jobs = j.at("jobs").get<int>();
    if (j.contains("forgive_below_floor"))
      config.forgive_below_floor = j.at("forgive_below_floor").get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return config;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

namespace {

ResultRow failed_cell_row(const GroundTruth& truth, double delta, std::uint64_t seed) {
  // Deterministic worst-case row, so one bad cell cannot sink a sweep.
  ResultRow row;
  row.n = truth.n();
  row.k = truth.k();
  row.delta = delta;
  row.seed = seed;
  row.misclassification = 1.0;
  row.exact = false;
  row.unclustered_count = truth.n();
  return row;
}

ResultRow run_cell_inner(const GroundTruth& truth, double delta, std::uint64_t seed,
                         const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();

  FaultyOracle oracle(truth, delta, seed);
  const VertexList all = oracle.all_vertices();
  const int k = config.clusters_hint > 0 ? config.clusters_hint : truth.k();

  Clustering clustering;
  switch (config.algo) {
    case Algo::full:
      clustering = noisy_clustering(oracle, all, k, delta, config.constants);
      break;
    case Algo::balanced: {
      const std::vector<VertexList> subclusters = balanced_clustering(
          oracle, all, k, delta, config.balance, config.constants, SampleClamp::whole_pool);
      clustering = global_grow(oracle, all, subclusters, config.constants);
      break;
    }
    case Algo::gap: {
      const std::vector<VertexList> subclusters =
          gap_clustering(oracle, all, config.gap_h, k, delta, config.balance, config.constants,
                         SampleClamp::whole_pool);
      clustering = global_grow(oracle, all, subclusters, config.constants);
      break;
    }
  }

  EvalOptions eval_options;
  if (config.algo == Algo::full && config.forgive_below_floor) {
    eval_options.forgive_below_floor = true;
    eval_options.floor_size = config.constants.enum_seed_size(truth.n(), 0.1, delta);
  }
  const EvalReport report = misclassification_error(clustering, truth, eval_options);

  ResultRow row;
  row.n = truth.n();
  row.k = truth.k();
  row.delta = delta;
  row.seed = seed;
  row.distinct_pairs = oracle.stats().distinct_pairs;
  row.total_calls = oracle.stats().total_calls;
  row.misclassification = report.misclassification;
  row.exact = report.exact;
  row.unclustered_count = report.unclustered_count;
  for (const auto& cluster : clustering.clusters)
    row.recovered_sizes.push_back(static_cast<long>(cluster.members.size()));
  std::sort(row.recovered_sizes.begin(), row.recovered_sizes.end(), std::greater<>());

  const auto end = std::chrono::steady_clock::now();
  row.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
  return row;
}

ResultRow run_cell(const GroundTruth& truth, double delta, std::uint64_t seed,
                   const ExperimentConfig& config) {
  try {
    return run_cell_inner(truth, delta, seed, config);
  } catch (const Error& e) {
    std::fprintf(stderr, "cell (delta=%g, seed=%llu) failed: %s\n", delta,
                 static_cast<unsigned long long>(seed), e.what());
    return failed_cell_row(truth, delta, seed);
  }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();

  const GroundTruth truth = config.instance_file.has_value()
                                ? GroundTruth::load_file(*config.instance_file)
                                : sample_instance(*config.instance_spec, config.instance_seed);

  struct Cell {
    double delta;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double d : config.deltas)
    for (std::uint64_t s : config.seeds) cells.push_back({d, s});

  std::vector<ResultRow> rows(cells.size());
  const int jobs = std::min<int>(config.jobs, static_cast<int>(cells.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      rows[i] = run_cell(truth, cells[i].delta, cells[i].seed, config);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
            rows[i] = run_cell(truth, cells[i].delta, cells[i].seed, config);
        } catch (...) {
          failures[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& worker : workers) worker.join();
    for (const auto& failure : failures)
      if (failure) std::rethrow_exception(failure);
  }

  // Canonical row order, independent of execution order.
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    return a.seed < b.seed;
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

namespace {

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(10);
  out << value;
  return out.str();
}

std::string sizes_field(const std::vector<long>& sizes) {
  std::ostringstream out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out << ";";
    out << sizes[i];
  }
  return out.str();
}

}  // namespace

std::string csv_header() {
  return "n,k,delta,seed,distinct_pairs,total_calls,misclassification,exact,"
         "unclustered_count,wall_ms,recovered_sizes";
}

std::string row_to_csv(const ResultRow& row, bool timing) {
  std::ostringstream out;
  out << row.n << "," << row.k << "," << format_double(row.delta) << "," << row.seed << ","
      << row.distinct_pairs << "," << row.total_calls << ","
      << format_double(row.misclassification) << "," << (row.exact ? 1 : 0) << ","
      << row.unclustered_count << "," << format_double(timing ? row.wall_ms : 0.0) << ","
      << sizes_field(row.recovered_sizes);
  return out.str();
}

std::string row_to_ndjson(const ResultRow& row, bool timing) {
  nlohmann::json j;
  j["n"] = row.n;
  j["k"] = row.k;
  j["delta"] = row.delta;
  j["seed"] = row.seed;
  j["distinct_pairs"] = row.distinct_pairs;
  j["total_calls"] = row.total_calls;
  j["misclassification"] = row.misclassification;
  j["exact"] = row.exact;
  j["unclustered_count"] = row.unclustered_count;
  j["wall_ms"] = timing ? row.wall_ms : 0.0;
  j["recovered_sizes"] = row.recovered_sizes;
  return j.dump();
}

std::string rows_to_text(const std::vector<ResultRow>& rows, OutputFormat format, bool timing) {
  std::ostringstream out;
  if (format == OutputFormat::csv) {
    out << csv_header() << "\n";
    for (const ResultRow& row : rows) out << row_to_csv(row, timing) << "\n";
  } else {
    for (const ResultRow& row : rows) out << row_to_ndjson(row, timing) << "\n";
  }
  return out.str();
}

std::string summary_csv(const std::vector<ResultRow>& rows) {
  std::map<double, std::vector<const ResultRow*>> by_delta;
  for (const ResultRow& row : rows) by_delta[row.delta].push_back(&row);

  auto mean_std = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    return std::pair<double, double>(mean, std::sqrt(var));
  };

  std::ostringstream out;
  out << "delta,runs,distinct_pairs_mean,distinct_pairs_std,misclassification_mean,"
         "misclassification_std,exact_rate,unclustered_mean\n";
  for (const auto& [delta, group] : by_delta) {
    std::vector<double> pairs, errs;
    double exact = 0.0, unclustered = 0.0;
    for (const ResultRow* row : group) {
      pairs.push_back(static_cast<double>(row->distinct_pairs));
      errs.push_back(row->misclassification);
      exact += row->exact ? 1.0 : 0.0;
      unclustered += static_cast<double>(row->unclustered_count);
    }
    const auto [pair_mean, pair_std] = mean_std(pairs);
    const auto [err_mean, err_std] = mean_std(errs);
    const double count = static_cast<double>(group.size());
    out << format_double(delta) << "," << group.size() << "," << format_double(pair_mean) << ","
        << format_double(pair_std) << "," << format_double(err_mean) << ","
        << format_double(err_std) << "," << format_double(exact / count) << ","
        << format_double(unclustered / count) << "\n";
  }
  return out.str();
}

}  // namespace fclust
