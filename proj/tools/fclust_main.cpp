// Command-line front end: instance generation, experiment runs and
// sweeps, and the invariant verifier. Exit codes: 0 success, 1 invariant
// or runtime failure, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fclust/experiment.hpp"
#include "fclust/verify.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots != std::string::npos) {
      const std::uint64_t lo = std::stoull(item.substr(0, dots));
      const std::uint64_t hi = std::stoull(item.substr(dots + 2));
      for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    } else {
      out.push_back(std::stoull(item));
    }
  }
  return out;
}

struct RunFlags {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string constants;
  double scale = 0.0;
  std::string seeds;
  std::string deltas;
  std::string algo;
  int jobs = 0;
  bool no_timing = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--config", flags.config_path, "experiment config file (JSON)")->required();
  cmd->add_option("--out", flags.out_path, "output path (default: config value or stdout)");
  cmd->add_option("--format", flags.format, "csv | ndjson");
  cmd->add_option("--constants", flags.constants, "paper | desk");
  cmd->add_option("--scale", flags.scale, "global constants scale factor");
  cmd->add_option("--seeds", flags.seeds, "comma list, ranges allowed (1..20)");
  cmd->add_option("--deltas", flags.deltas, "comma list of oracle biases in (0,1]");
  cmd->add_option("--algo", flags.algo, "full | balanced | gap");
  cmd->add_option("--jobs", flags.jobs, "concurrent (delta, seed) cells");
  cmd->add_flag("--no-timing", flags.no_timing, "zero the wall-time column (stable output)");
}

fclust::ExperimentConfig config_from_flags(const RunFlags& flags) {
  fclust::ExperimentConfig config = fclust::ExperimentConfig::from_json_file(flags.config_path);
  if (!flags.out_path.empty()) config.out_path = flags.out_path;
  if (!flags.format.empty()) {
    if (flags.format == "csv") config.format = fclust::OutputFormat::csv;
    else if (flags.format == "ndjson") config.format = fclust::OutputFormat::ndjson;
    else throw fclust::ConfigError("--format must be csv | ndjson");
  }
  if (!flags.constants.empty()) {
    const double keep_scale = config.constants.scale;
    if (flags.constants == "paper")
      config.constants = fclust::AlgorithmConstants::paper_defaults();
    else if (flags.constants == "desk")
      config.constants = fclust::AlgorithmConstants::desk_defaults();
    else
      throw fclust::ConfigError("--constants must be paper | desk");
    config.constants_profile = flags.constants;
    config.constants.scale = keep_scale;
  }
  if (flags.scale > 0.0) config.constants.scale = flags.scale;
  if (!flags.seeds.empty()) config.seeds = parse_seed_list(flags.seeds);
  if (!flags.deltas.empty()) config.deltas = parse_double_list(flags.deltas);
  if (!flags.algo.empty()) {
    if (flags.algo == "full") config.algo = fclust::Algo::full;
    else if (flags.algo == "balanced") config.algo = fclust::Algo::balanced;
    else if (flags.algo == "gap") config.algo = fclust::Algo::gap;
    else throw fclust::ConfigError("--algo must be full | balanced | gap");
  }
  if (flags.jobs > 0) config.jobs = flags.jobs;
  if (flags.no_timing) config.timing = false;
  return config;
}

int do_run(const RunFlags& flags) {
  const fclust::ExperimentConfig config = config_from_flags(flags);
  const std::vector<fclust::ResultRow> rows = fclust::run_experiment(config);
  const std::string text = fclust::rows_to_text(rows, config.format, config.timing);

  if (config.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.out_path);
    if (!out) throw fclust::ConfigError("cannot write " + config.out_path);
    out << text;
    const std::string summary_path = config.out_path + ".summary.csv";
    std::ofstream summary(summary_path);
    summary << fclust::summary_csv(rows);
    std::cerr << rows.size() << " rows -> " << config.out_path << " (aggregates in "
              << summary_path << ")\n";
  }
  return 0;
}

int do_gen_instance(const std::string& type, long n, int k, double b, int h,
                    const std::string& sizes_text, std::uint64_t seed, const std::string& out) {
  fclust::InstanceSpec spec = fclust::Balanced{n, k};
  if (type == "balanced") {
    spec = fclust::Balanced{n, k};
  } else if (type == "bbalanced") {
    spec = fclust::BBalanced{n, k, b};
  } else if (type == "gap") {
    spec = fclust::GapShaped{n, k, h, b};
  } else if (type == "exact") {
    std::vector<long> sizes;
    for (double v : parse_double_list(sizes_text)) sizes.push_back(static_cast<long>(v));
    spec = fclust::ExactSizes{sizes};
  } else {
    throw fclust::ConfigError("--type must be balanced | bbalanced | gap | exact");
  }
  const fclust::GroundTruth truth = fclust::sample_instance(spec, seed);
  if (out.empty())
    truth.write_json(std::cout);
  else
    truth.save_file(out);
  return 0;
}

int do_verify(const std::string& level_text) {
  fclust::VerifyLevel level;
  if (level_text == "quick") level = fclust::VerifyLevel::quick;
  else if (level_text == "full") level = fclust::VerifyLevel::full;
  else throw fclust::ConfigError("--level must be quick | full");

  const std::vector<fclust::CheckResult> results = fclust::run_verify(level);
  int failures = 0;
  for (const auto& result : results) {
    std::printf("[%s] %-36s %s (%.2fs)\n", result.pass ? "PASS" : "FAIL", result.name.c_str(),
                result.detail.c_str(), result.seconds);
    if (!result.pass) ++failures;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustering with a noisy pairwise oracle: experiment harness"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "execute the runs described by a config file");
  add_run_flags(run_cmd, run_flags);

  RunFlags sweep_flags;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a config across delta/seed grids (flags override)");
  add_run_flags(sweep_cmd, sweep_flags);

  std::string gen_type = "balanced", gen_sizes, gen_out;
  long gen_n = 100;
  int gen_k = 2, gen_h = 1;
  double gen_b = 0.5;
  std::uint64_t gen_seed = 1;
  CLI::App* gen_cmd = app.add_subcommand("gen-instance", "write a ground-truth instance file");
  gen_cmd->add_option("--type", gen_type, "balanced | bbalanced | gap | exact");
  gen_cmd->add_option("--n", gen_n, "vertex count");
  gen_cmd->add_option("--k", gen_k, "cluster count");
  gen_cmd->add_option("--b", gen_b, "balance parameter");
  gen_cmd->add_option("--gap-h", gen_h, "gap index (gap type)");
  gen_cmd->add_option("--sizes", gen_sizes, "comma list (exact type)");
  gen_cmd->add_option("--seed", gen_seed, "instance seed");
  gen_cmd->add_option("--out", gen_out, "output path (default stdout)");

  std::string verify_level = "quick";
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the module invariant suites");
  verify_cmd->add_option("--level", verify_level, "quick | full");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return do_run(run_flags);
    if (sweep_cmd->parsed()) return do_run(sweep_flags);
    if (gen_cmd->parsed())
      return do_gen_instance(gen_type, gen_n, gen_k, gen_b, gen_h, gen_sizes, gen_seed, gen_out);
    if (verify_cmd->parsed()) return do_verify(verify_level);
  } catch (const fclust::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fclust::InfeasibleSpecError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
