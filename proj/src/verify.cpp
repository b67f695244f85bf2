#include "fclust/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fclust/algorithms.hpp"
#include "fclust/eval.hpp"
#include "fclust/experiment.hpp"
#include "fclust/signed_graph.hpp"
#include "fclust/spectral.hpp"

namespace fclust {

namespace {

CheckResult timed(const std::string& name,
                  const std::function<std::pair<bool, std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult result;
  result.name = name;
  try {
    auto [pass, detail] = body();
    result.pass = pass;
    result.detail = std::move(detail);
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
  }
  const auto end = std::chrono::steady_clock::now();
  result.seconds = std::chrono::duration<double>(end - start).count();
  return result;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// Grouping of a vertex subset by planted label, as sorted member lists.
std::set<VertexList> planted_groups(const GroundTruth& truth, const VertexList& subset) {
  std::map<int, VertexList> groups;
  for (VertexId v : subset) groups[truth.label(v)].push_back(v);
  std::set<VertexList> out;
  for (auto& [label, members] : groups) {
    std::sort(members.begin(), members.end());
    out.insert(std::move(members));
  }
  return out;
}

std::set<VertexList> as_set_of_sets(const std::vector<VertexList>& clusters) {
  std::set<VertexList> out;
  for (VertexList c : clusters) {
    std::sort(c.begin(), c.end());
    out.insert(std::move(c));
  }
  return out;
}

std::set<VertexList> clustering_sets(const Clustering& clustering) {
  std::vector<VertexList> lists;
  for (const auto& c : clustering.clusters) lists.push_back(c.members);
  return as_set_of_sets(lists);
}

bool partition_matches_planted(const GroundTruth& truth, const SignedSubgraph& graph,
                               const PartitionResult& parts) {
  std::vector<VertexList> lists;
  for (const auto& cluster : parts.clusters) {
    VertexList ids;
    for (Eigen::Index pos : cluster) ids.push_back(graph.vertex(pos));
    lists.push_back(std::move(ids));
  }
  return as_set_of_sets(lists) == planted_groups(truth, graph.vertices());
}

}  // namespace

// ---------------------------------------------------------------------------
// Tamper-able primitives
// ---------------------------------------------------------------------------

long count_persistence_violations(const AnswerFn& answer, long n, long probes, int repeats,
                                  SplitMix64& rng) {
  long violations = 0;
  for (long p = 0; p < probes; ++p) {
    const VertexId u = 1 + static_cast<VertexId>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    VertexId v = 1 + static_cast<VertexId>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
    if (v >= u) ++v;
    const int first = answer(u, v);
    for (int r = 1; r < repeats; ++r)
      if (answer(u, v) != first) {
        ++violations;
        break;
      }
  }
  return violations;
}

long count_symmetry_violations(const AnswerFn& answer, long n, long probes, SplitMix64& rng) {
  long violations = 0;
  for (long p = 0; p < probes; ++p) {
    const VertexId u = 1 + static_cast<VertexId>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    VertexId v = 1 + static_cast<VertexId>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
    if (v >= u) ++v;
    if (answer(u, v) != answer(v, u)) ++violations;
  }
  return violations;
}

// ---------------------------------------------------------------------------
// Pinned end-to-end checks
// ---------------------------------------------------------------------------

CheckResult check_persistence_symmetry() {
  return timed("persistence & symmetry", []() -> std::pair<bool, std::string> {
    const auto start = std::chrono::steady_clock::now();
    long persistence_violations = 0;
    long symmetry_violations = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      GroundTruth truth = sample_instance(Balanced{200, 4}, seed);
      FaultyOracle oracle(truth, 0.6, seed);
      const AnswerFn fn = [&](VertexId u, VertexId v) { return oracle.query(u, v); };
      SplitMix64 rng(seed * 77777);
      persistence_violations += count_persistence_violations(fn, 200, 100000, 3, rng);
      symmetry_violations += count_symmetry_violations(fn, 200, 100000, rng);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = persistence_violations == 0 && symmetry_violations == 0 && secs < 5.0;
    return {pass, "changes=" + std::to_string(persistence_violations) +
                      " asymmetries=" + std::to_string(symmetry_violations) + " (" + fmt(secs) +
                      "s, limit 5s)"};
  });
}

CheckResult check_noise_calibration() {
  return timed("noise calibration", []() -> std::pair<bool, std::string> {
    const long m = 10000;
    std::ostringstream detail;
    bool pass = true;
    for (double delta : {0.2, 0.5, 0.8}) {
      GroundTruth truth = sample_instance(ExactSizes{{150, 150}}, 11);
      FaultyOracle oracle(truth, delta, 42);

      VertexList c1, c2;
      for (VertexId v = 1; v <= truth.n(); ++v)
        (truth.label(v) == 1 ? c1 : c2).push_back(v);

      long same_pos = 0, same_total = 0;
      for (const VertexList* side : {&c1, &c2})
        for (std::size_t i = 0; i < side->size() && same_total < m; ++i)
          for (std::size_t j = i + 1; j < side->size() && same_total < m; ++j) {
            if (oracle.query((*side)[i], (*side)[j]) > 0) ++same_pos;
            ++same_total;
          }
      long cross_pos = 0, cross_total = 0;
      for (std::size_t i = 0; i < c1.size() && cross_total < m; ++i)
        for (std::size_t j = 0; j < c2.size() && cross_total < m; ++j) {
          if (oracle.query(c1[i], c2[j]) > 0) ++cross_pos;
          ++cross_total;
        }

      const double p_same = 0.5 + 0.5 * delta;
      const double p_cross = 0.5 - 0.5 * delta;
      const double band_same = 4.0 * std::sqrt(p_same * (1 - p_same) / static_cast<double>(m));
      const double band_cross = 4.0 * std::sqrt(p_cross * (1 - p_cross) / static_cast<double>(m));
      const double rate_same = static_cast<double>(same_pos) / static_cast<double>(same_total);
      const double rate_cross = static_cast<double>(cross_pos) / static_cast<double>(cross_total);
      const bool ok = std::abs(rate_same - p_same) <= band_same &&
                      std::abs(rate_cross - p_cross) <= band_cross;
      pass = pass && ok;
      detail << "d=" << delta << " same " << fmt(rate_same) << "~" << fmt(p_same) << " cross "
             << fmt(rate_cross) << "~" << fmt(p_cross) << (ok ? " ok; " : " OUT OF BAND; ");
    }
    return {pass, detail.str()};
  });
}

namespace {

InstanceSpec noiseless_suite_spec(int index) {
  // Alternating balanced and gap-shaped instances, n in [150, 500].
  const long n = 150 + (static_cast<long>(index) * 97) % 351;
  if (index % 2 == 0) {
    const int k = 2 + index % 3;
    return Balanced{n, k};
  }
  const int k = 3 + index % 2;
  const int h = 1 + index % (k - 1);
  return GapShaped{n, k, h, 0.1};
}

}  // namespace

CheckResult check_noiseless_exactness() {
  return timed("noiseless exactness", []() -> std::pair<bool, std::string> {
    const auto start = std::chrono::steady_clock::now();
    const AlgorithmConstants consts = AlgorithmConstants::desk_defaults();
    int exact_runs = 0;
    std::ostringstream failures;
    for (int i = 0; i < 50; ++i) {
      const GroundTruth truth = sample_instance(noiseless_suite_spec(i), 1000 + i);
      FaultyOracle oracle(truth, 1.0, 9000 + i);
      const Clustering result =
          noisy_clustering(oracle, oracle.all_vertices(), truth.k(), 1.0, consts);
      EvalOptions options;
      options.forgive_below_floor = true;
      options.floor_size = consts.enum_seed_size(truth.n(), 0.1, 1.0);
      const EvalReport report = misclassification_error(result, truth, options);
      if (report.misclassification == 0.0)
        ++exact_runs;
      else
        failures << " #" << i << "=" << fmt(report.misclassification);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = exact_runs == 50 && secs < 120.0;
    return {pass, std::to_string(exact_runs) + "/50 exact (" + fmt(secs) + "s, limit 120s)" +
                      failures.str()};
  });
}

CheckResult check_spectral_recovery() {
  return timed("spectral recovery", []() -> std::pair<bool, std::string> {
    const AlgorithmConstants consts = AlgorithmConstants::desk_defaults();
    if (!recovery_condition(600, 3, 1.0, 0.7, consts.c0))
      return {false, "recovery_condition(600,3,1,0.7,c0) must hold for the frozen c0"};
    int exact = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const GroundTruth truth = sample_instance(Balanced{600, 3}, 17);
      FaultyOracle oracle(truth, 0.7, seed);
      const SignedSubgraph graph = build_query_graph(oracle, oracle.all_vertices());
      const PartitionResult parts = bal_partition(graph, 3, 0.7, 1.0);
      if (partition_matches_planted(truth, graph, parts)) ++exact;
    }
    return {exact >= 19, std::to_string(exact) + "/20 exact (need 19)"};
  });
}

CheckResult check_balanced_pipeline() {
  return timed("balanced pipeline", []() -> std::pair<bool, std::string> {
    const auto start = std::chrono::steady_clock::now();
    const AlgorithmConstants consts = AlgorithmConstants::desk_defaults();
    const long n = 900;
    const int k = 3;
    const double delta = 0.7;
    const double ln_n = std::log(static_cast<double>(n));
    const double budget = 10.0 * (static_cast<double>(n) * k * ln_n / (delta * delta) +
                                  81.0 * ln_n * ln_n / (delta * delta * delta * delta));
    int exact = 0;
    bool within_budget = true;
    double worst_pairs = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const GroundTruth truth = sample_instance(Balanced{n, k}, 23);
      FaultyOracle oracle(truth, delta, seed);
      const std::vector<VertexList> subclusters =
          balanced_clustering(oracle, oracle.all_vertices(), k, delta, 1.0, consts,
                              SampleClamp::whole_pool);
      const Clustering result = global_grow(oracle, oracle.all_vertices(), subclusters, consts);
      const EvalReport report = misclassification_error(result, truth);
      if (report.exact) ++exact;
      const double pairs = static_cast<double>(oracle.stats().distinct_pairs);
      worst_pairs = std::max(worst_pairs, pairs);
      if (pairs > budget) within_budget = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = exact >= 19 && within_budget && secs < 300.0;
    return {pass, std::to_string(exact) + "/20 exact (need 19), max pairs " + fmt(worst_pairs) +
                      " <= budget " + fmt(budget) + " (" + fmt(secs) + "s, limit 300s)"};
  });
}

CheckResult check_unbalanced_pipeline() {
  return timed("unbalanced pipeline", []() -> std::pair<bool, std::string> {
    const AlgorithmConstants consts = AlgorithmConstants::desk_defaults();
    const double delta = 0.8;
    const double eta = 0.1;
    const GroundTruth truth = sample_instance(ExactSizes{{400, 380, 40}}, 5);

    // The two large planted clusters as sorted sets.
    std::map<int, VertexList> by_label;
    for (VertexId v = 1; v <= truth.n(); ++v) by_label[truth.label(v)].push_back(v);
    std::vector<std::pair<long, int>> by_size;
    for (auto& [label, members] : by_label)
      by_size.emplace_back(static_cast<long>(members.size()), label);
    std::sort(by_size.begin(), by_size.end(), std::greater<>());
    std::set<VertexList> large_sets;
    for (int i = 0; i < 2; ++i) large_sets.insert(by_label[by_size[static_cast<std::size_t>(i)].second]);

    int good = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      bool run_ok = true;

      // Index search: h must come out as 2 with (eta/4)-biased seeds.
      {
        FaultyOracle oracle(truth, delta, seed);
        const auto found =
            enumerate_index(oracle, oracle.all_vertices(), truth.k(), delta, 0.1, eta, consts);
        if (!found || found->h != 2) run_ok = false;
        if (run_ok) {
          for (const VertexList& seed_set : found->seeds) {
            std::map<int, long> overlap;
            for (VertexId v : seed_set) ++overlap[truth.label(v)];
            long best = 0;
            for (const auto& [label, count] : overlap) best = std::max(best, count);
            if (static_cast<double>(best) <
                (0.5 + eta / 4.0) * static_cast<double>(seed_set.size()))
              run_ok = false;
          }
        }
      }

      // Full pipeline: both large clusters recovered exactly.
      if (run_ok) {
        FaultyOracle oracle(truth, delta, seed);
        const Clustering result =
            noisy_clustering(oracle, oracle.all_vertices(), truth.k(), delta, consts);
        const std::set<VertexList> produced = clustering_sets(result);
        for (const VertexList& want : large_sets)
          if (!produced.count(want)) run_ok = false;
      }

      if (run_ok) ++good;
    }
    return {good >= 18, std::to_string(good) + "/20 runs with h=2, biased seeds, both large "
                                               "clusters exact (need 18)"};
  });
}

CheckResult check_size_gap_property() {
  return timed("size-gap property", []() -> std::pair<bool, std::string> {
    const auto start = std::chrono::steady_clock::now();
    SplitMix64 rng(20260810);
    long failures = 0;
    for (long trial = 0; trial < 10000; ++trial) {
      const int k = 2 + static_cast<int>(uniform_below(rng, 7));
      const double b = 0.02 + 0.48 * rng.unit();
      const long n_min = static_cast<long>(std::ceil(static_cast<double>(k) / b)) + k;
      const long n = n_min + static_cast<long>(uniform_below(rng, 5000));

      const double small_limit = b * static_cast<double>(n) / k;
      long small_max = static_cast<long>(std::floor(small_limit));
      if (static_cast<double>(small_max) >= small_limit) --small_max;
      if (small_max < 1) {
        --trial;
        continue;
      }
      const long s_min = 1 + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(small_max)));
      std::vector<long> sizes(static_cast<std::size_t>(k), s_min);
      for (long extra = n - s_min * k; extra > 0; --extra)
        ++sizes[static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(k - 1)))];
      std::sort(sizes.begin(), sizes.end(), std::greater<>());

      const auto h = find_gap_index(sizes, n, k, b);
      if (!h.has_value() || *h < 1 || *h > k - 1) {
        ++failures;
        continue;
      }
      const double nk = static_cast<double>(n) / k;
      const double step = b * static_cast<double>(n) / (static_cast<double>(k) * k);
      const double s_h = static_cast<double>(sizes[static_cast<std::size_t>(*h - 1)]);
      const double s_h1 = static_cast<double>(sizes[static_cast<std::size_t>(*h)]);
      if (!(s_h >= nk - *h * step)) ++failures;
      else if (!(s_h1 < nk - (*h + 1) * step)) ++failures;
      else if (!(s_h - s_h1 >= step - 1e-9)) ++failures;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = failures == 0 && secs < 10.0;
    return {pass, std::to_string(failures) + " violations in 10000 instances (" + fmt(secs) +
                      "s, limit 10s)"};
  });
}

CheckResult check_biased_growth() {
  return timed("biased growth", []() -> std::pair<bool, std::string> {
    const double delta = 0.6;
    const double eta = 0.1;
    const GroundTruth truth = sample_instance(ExactSizes{{500, 200, 500}}, 7);
    FaultyOracle oracle(truth, delta, 1);

    std::map<int, VertexList> by_label;
    for (VertexId v = 1; v <= truth.n(); ++v) by_label[truth.label(v)].push_back(v);
    // Cluster 1 is C; B is (eta,C)-biased: 180 members of C, 120 of cluster 2.
    VertexList reference(by_label[1].begin(), by_label[1].begin() + 180);
    reference.insert(reference.end(), by_label[2].begin(), by_label[2].begin() + 120);

    long errors = 0;
    for (int i = 0; i < 250; ++i) {  // in C, outside B
      const VertexId v = by_label[1][static_cast<std::size_t>(180 + i)];
      if (!belong_to_cluster(oracle, v, reference)) ++errors;
    }
    for (int i = 0; i < 250; ++i) {  // outside C entirely
      const VertexId v = by_label[3][static_cast<std::size_t>(i)];
      if (belong_to_cluster(oracle, v, reference)) ++errors;
    }

    const double rate = static_cast<double>(errors) / 500.0;
    const double bound = chernoff_failure_bound(300, eta * delta * 300.0 / 2.0);
    const bool pass = rate <= 0.01 && rate <= bound;
    return {pass, "error rate " + fmt(rate) + " (need <= 0.01), tail bound " + fmt(bound)};
  });
}

CheckResult check_bias_test_discrimination() {
  return timed("bias test discrimination", []() -> std::pair<bool, std::string> {
    const AlgorithmConstants consts = AlgorithmConstants::desk_defaults();
    const double delta = 0.6;
    const double eta = 0.1;
    const GroundTruth truth = sample_instance(ExactSizes{{8000, 8000}}, 13);

    std::map<int, VertexList> by_label;
    for (VertexId v = 1; v <= truth.n(); ++v) by_label[truth.label(v)].push_back(v);
    VertexList biased(by_label[1].begin(), by_label[1].begin() + 6000);
    VertexList split(by_label[1].begin(), by_label[1].begin() + 3000);
    split.insert(split.end(), by_label[2].begin(), by_label[2].begin() + 3000);

    int accepted = 0, rejected = 0;
    for (std::uint64_t trial = 1; trial <= 200; ++trial) {
      FaultyOracle oracle(truth, delta, trial);
      const VertexList pool = oracle.all_vertices();
      if (test_bias(oracle, truth.n(), biased, eta, 0.1, 2, delta, pool, consts)) ++accepted;
      if (!test_bias(oracle, truth.n(), split, eta, 0.1, 2, delta, pool, consts)) ++rejected;
    }
    const bool pass = accepted >= 198 && rejected >= 198;
    return {pass, "accepted " + std::to_string(accepted) + "/200 biased, rejected " +
                      std::to_string(rejected) + "/200 half-split (need 198 each)"};
  });
}

CheckResult check_query_monotonicity() {
  return timed("query monotonicity & determinism", []() -> std::pair<bool, std::string> {
    ExperimentConfig config;
    config.instance_spec = Balanced{900, 3};
    config.instance_seed = 29;
    config.deltas = {0.4, 0.6, 0.8, 1.0};
    config.seeds = {1, 2, 3};
    config.algo = Algo::balanced;
    config.balance = 1.0;
    config.timing = false;

    const std::vector<ResultRow> first = run_experiment(config);
    const std::vector<ResultRow> second = run_experiment(config);
    const std::string text1 = rows_to_text(first, OutputFormat::csv, false);
    const std::string text2 = rows_to_text(second, OutputFormat::csv, false);
    const bool identical = text1 == text2;

    std::map<double, double> mean_pairs;
    std::map<double, int> counts;
    for (const ResultRow& row : first) {
      mean_pairs[row.delta] += static_cast<double>(row.distinct_pairs);
      counts[row.delta] += 1;
    }
    bool monotone = true;
    double previous = std::numeric_limits<double>::infinity();
    std::ostringstream means;
    for (auto& [delta, total] : mean_pairs) {
      total /= counts[delta];
      if (total > previous + 1e-9) monotone = false;
      previous = total;
      means << " d=" << delta << ":" << fmt(total);
    }
    return {identical && monotone,
            std::string(identical ? "rerun byte-identical" : "RERUN DIFFERS") +
                (monotone ? ", mean pairs non-increasing:" : ", NOT MONOTONE:") + means.str()};
  });
}

CheckResult check_brute_force_concordance() {
  return timed("brute-force concordance", []() -> std::pair<bool, std::string> {
    AlgorithmConstants consts = AlgorithmConstants::desk_defaults();
    // Whole-graph regime on 10 vertices: tiny floor, seed prefixes of 3.
    // Prefixes of 4 would leave a single probe vertex per cluster, and one
    // unlucky persistent edge set on it blocks the bias test for good.
    consts.stop_size_mult = 1e-6;
    consts.enum_seed_mult = 0.0105;

    const GroundTruth truth = sample_instance(ExactSizes{{5, 5}}, 3);
    const std::set<VertexList> planted = planted_groups(truth, [&] {
      VertexList all(static_cast<std::size_t>(truth.n()));
      std::iota(all.begin(), all.end(), 1);
      return all;
    }());

    int brute_matches_planted = 0;
    int disagreements = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      FaultyOracle graph_oracle(truth, 0.9, seed);
      const SignedSubgraph graph = build_query_graph(graph_oracle, graph_oracle.all_vertices());
      const std::set<VertexList> brute = clustering_sets(brute_force_ml_clustering(graph, 2));
      if (brute != planted) continue;  // criterion gates only these seeds
      ++brute_matches_planted;

      FaultyOracle pipeline_oracle(truth, 0.9, seed);  // same seed, same answers
      const Clustering result =
          noisy_clustering(pipeline_oracle, pipeline_oracle.all_vertices(), 2, 0.9, consts);
      if (!result.unclustered.empty() || clustering_sets(result) != brute) ++disagreements;
    }
    const bool pass = disagreements == 0 && brute_matches_planted > 0;
    return {pass, std::to_string(disagreements) + " disagreements on " +
                      std::to_string(brute_matches_planted) + "/30 seeds where brute force = planted"};
  });
}

std::vector<CheckResult> acceptance_checks() {
  return {check_persistence_symmetry(),
          check_noise_calibration(),
          check_noiseless_exactness(),
          check_spectral_recovery(),
          check_balanced_pipeline(),
          check_unbalanced_pipeline(),
          check_size_gap_property(),
          check_biased_growth(),
          check_bias_test_discrimination(),
          check_query_monotonicity(),
          check_brute_force_concordance()};
}

// ---------------------------------------------------------------------------
// Quick invariant sweep
// ---------------------------------------------------------------------------

namespace {

CheckResult quick_oracle_invariants() {
  return timed("oracle invariants (small)", []() -> std::pair<bool, std::string> {
    GroundTruth truth = sample_instance(Balanced{120, 3}, 1);
    FaultyOracle oracle(truth, 0.5, 99);
    const AnswerFn fn = [&](VertexId u, VertexId v) { return oracle.query(u, v); };
    SplitMix64 rng(5);
    const long persistence = count_persistence_violations(fn, 120, 10000, 3, rng);
    const long symmetry = count_symmetry_violations(fn, 120, 10000, rng);

    // Accounting must agree with an independent set of canonical pairs.
    FaultyOracle fresh(truth, 0.5, 99);
    std::set<std::pair<VertexId, VertexId>> reference;
    SplitMix64 rng2(6);
    for (int i = 0; i < 5000; ++i) {
      const VertexId u = 1 + static_cast<VertexId>(uniform_below(rng2, 120));
      VertexId v = 1 + static_cast<VertexId>(uniform_below(rng2, 119));
      if (v >= u) ++v;
      fresh.query(u, v);
      reference.insert({std::min(u, v), std::max(u, v)});
    }
    const bool accounting_ok = fresh.stats().distinct_pairs == reference.size() &&
                               fresh.stats().total_calls == 5000;
    const bool pass = persistence == 0 && symmetry == 0 && accounting_ok;
    return {pass, accounting_ok ? "accounting exact" : "ACCOUNTING MISMATCH"};
  });
}

CheckResult quick_noise_band() {
  return timed("noise band (small)", []() -> std::pair<bool, std::string> {
    GroundTruth truth = sample_instance(ExactSizes{{150, 150}}, 2);
    FaultyOracle oracle(truth, 0.5, 3);
    long pos = 0, total = 0;
    for (VertexId u = 1; u <= truth.n() && total < 10000; ++u)
      for (VertexId v = u + 1; v <= truth.n() && total < 10000; ++v) {
        if (truth.label(u) != truth.label(v)) continue;
        if (oracle.query(u, v) > 0) ++pos;
        ++total;
      }
    const double rate = static_cast<double>(pos) / static_cast<double>(total);
    const double band = 4.0 * std::sqrt(0.75 * 0.25 / static_cast<double>(total));
    return {std::abs(rate - 0.75) <= band, "rate " + fmt(rate) + " vs 0.75 +- " + fmt(band)};
  });
}

CheckResult quick_graph_invariants() {
  return timed("signed-graph invariants", []() -> std::pair<bool, std::string> {
    GroundTruth truth = sample_instance(Balanced{60, 3}, 3);
    FaultyOracle oracle(truth, 0.6, 4);
    const SignedSubgraph graph = build_query_graph(oracle, oracle.all_vertices());

    long degree_sum = 0;
    for (Eigen::Index i = 0; i < graph.size(); ++i) degree_sum += positive_degree(graph, i);
    const bool even = degree_sum % 2 == 0;

    const SignedSubgraph filtered = filter_by_degree(graph, 20.0);
    bool restriction_ok = true;
    for (Eigen::Index a = 0; a < filtered.size() && restriction_ok; ++a)
      for (Eigen::Index b = 0; b < filtered.size(); ++b) {
        // find original positions by vertex id
        const VertexId va = filtered.vertex(a), vb = filtered.vertex(b);
        Eigen::Index oa = -1, ob = -1;
        for (Eigen::Index i = 0; i < graph.size(); ++i) {
          if (graph.vertex(i) == va) oa = i;
          if (graph.vertex(i) == vb) ob = i;
        }
        if (filtered.positive_edge(a, b) != graph.positive_edge(oa, ob)) {
          restriction_ok = false;
          break;
        }
      }

    const bool pass = even && restriction_ok;
    return {pass, std::string(even ? "degree sum even" : "DEGREE SUM ODD") +
                      (restriction_ok ? ", filter is a restriction" : ", FILTER MISMATCH")};
  });
}

CheckResult quick_spectral_invariants() {
  return timed("spectral invariants", []() -> std::pair<bool, std::string> {
    // Noiseless: components recovered exactly, any sizes >= 2.
    GroundTruth truth = sample_instance(ExactSizes{{8, 5, 2}}, 4);
    FaultyOracle oracle(truth, 1.0, 5);
    const SignedSubgraph graph = build_query_graph(oracle, oracle.all_vertices());
    const PartitionResult parts = bal_partition(graph, 3, 1.0, 0.5);
    const bool noiseless_ok = partition_matches_planted(truth, graph, parts);

    // Output is a partition even on pure noise.
    GroundTruth coin_truth = sample_instance(Balanced{40, 2}, 5);
    FaultyOracle coin(coin_truth, 0.05, 6);
    const SignedSubgraph noisy_graph = build_query_graph(coin, coin.all_vertices());
    const PartitionResult noisy_parts = bal_partition(noisy_graph, 4, 0.05, 0.5);
    std::set<Eigen::Index> seen;
    long covered = 0;
    bool disjoint = true, nonempty = true;
    for (const auto& cluster : noisy_parts.clusters) {
      if (cluster.empty()) nonempty = false;
      for (Eigen::Index pos : cluster) {
        if (!seen.insert(pos).second) disjoint = false;
        ++covered;
      }
    }
    const bool partition_ok =
        disjoint && nonempty && covered == noisy_graph.size() && noisy_parts.clusters.size() == 4;

    const bool pass = noiseless_ok && partition_ok;
    return {pass, std::string(noiseless_ok ? "noiseless exact" : "NOISELESS FAILED") +
                      (partition_ok ? ", partition well-formed" : ", PARTITION MALFORMED")};
  });
}

CheckResult quick_gap_property() {
  return timed("size-gap property (small)", []() -> std::pair<bool, std::string> {
    SplitMix64 rng(77);
    long failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int k = 2 + static_cast<int>(uniform_below(rng, 5));
      const double b = 0.05 + 0.45 * rng.unit();
      const long n = static_cast<long>(std::ceil(k / b)) + k + static_cast<long>(uniform_below(rng, 800));
      const double small_limit = b * static_cast<double>(n) / k;
      long small_max = static_cast<long>(std::floor(small_limit));
      if (static_cast<double>(small_max) >= small_limit) --small_max;
      if (small_max < 1) continue;
      const long s_min = 1 + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(small_max)));
      std::vector<long> sizes(static_cast<std::size_t>(k), s_min);
      for (long extra = n - s_min * k; extra > 0; --extra)
        ++sizes[static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(k - 1)))];
      std::sort(sizes.begin(), sizes.end(), std::greater<>());
      const auto h = find_gap_index(sizes, n, k, b);
      if (!h.has_value() || *h > k - 1) ++failures;
    }
    return {failures == 0, std::to_string(failures) + " violations in 1000 instances"};
  });
}

CheckResult quick_assignment_oracle() {
  return timed("assignment vs permutation brute force", []() -> std::pair<bool, std::string> {
    SplitMix64 rng(123);
    for (int trial = 0; trial < 200; ++trial) {
      const int r = 1 + static_cast<int>(uniform_below(rng, 5));
      const int c = 1 + static_cast<int>(uniform_below(rng, 5));
      std::vector<std::vector<long>> weight(static_cast<std::size_t>(r),
                                            std::vector<long>(static_cast<std::size_t>(c)));
      for (auto& row : weight)
        for (long& w : row) w = static_cast<long>(uniform_below(rng, 50));

      const std::vector<int> match = max_assignment(weight);
      long got = 0;
      std::set<int> used;
      for (int i = 0; i < r; ++i) {
        const int j = match[static_cast<std::size_t>(i)];
        if (j < 0) continue;
        if (!used.insert(j).second) return {false, "assignment reused a column"};
        got += weight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }

      // Exhaustive maximum over injective maps.
      const int nsize = std::max(r, c);
      std::vector<int> perm(static_cast<std::size_t>(nsize));
      std::iota(perm.begin(), perm.end(), 0);
      long best = 0;
      do {
        long total = 0;
        for (int i = 0; i < r; ++i)
          if (perm[static_cast<std::size_t>(i)] < c)
            total += weight[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        best = std::max(best, total);
      } while (std::next_permutation(perm.begin(), perm.end()));

      if (got != best)
        return {false, "assignment " + std::to_string(got) + " != brute " + std::to_string(best)};
    }
    return {true, "200 random matrices agree"};
  });
}

CheckResult quick_pipeline_smoke() {
  return timed("noiseless pipeline smoke", []() -> std::pair<bool, std::string> {
    const AlgorithmConstants consts = AlgorithmConstants::desk_defaults();
    bool pass = true;
    std::ostringstream detail;
    for (const InstanceSpec& spec :
         {InstanceSpec(Balanced{150, 3}), InstanceSpec(GapShaped{200, 3, 2, 0.1})}) {
      const GroundTruth truth = sample_instance(spec, 8);
      FaultyOracle oracle(truth, 1.0, 9);
      const Clustering result =
          noisy_clustering(oracle, oracle.all_vertices(), truth.k(), 1.0, consts);
      EvalOptions options;
      options.forgive_below_floor = true;
      options.floor_size = consts.enum_seed_size(truth.n(), 0.1, 1.0);
      const EvalReport report = misclassification_error(result, truth, options);
      pass = pass && report.misclassification == 0.0;
      detail << " err=" << fmt(report.misclassification);
    }
    return {pass, "noiseless runs:" + detail.str()};
  });
}

CheckResult quick_determinism() {
  return timed("experiment determinism", []() -> std::pair<bool, std::string> {
    ExperimentConfig config;
    config.instance_spec = Balanced{150, 3};
    config.deltas = {0.8, 1.0};
    config.seeds = {1, 2};
    config.timing = false;
    const std::string a = rows_to_text(run_experiment(config), OutputFormat::csv, false);
    const std::string b = rows_to_text(run_experiment(config), OutputFormat::csv, false);
    return {a == b, a == b ? "byte-identical" : "RERUN DIFFERS"};
  });
}

}  // namespace

std::vector<CheckResult> quick_checks() {
  return {quick_oracle_invariants(), quick_noise_band(),    quick_graph_invariants(),
          quick_spectral_invariants(), quick_gap_property(), quick_assignment_oracle(),
          quick_pipeline_smoke(),      quick_determinism()};
}

std::vector<CheckResult> run_verify(VerifyLevel level) {
  std::vector<CheckResult> results = quick_checks();
  if (level == VerifyLevel::full) {
    std::vector<CheckResult> deep = acceptance_checks();
    results.insert(results.end(), deep.begin(), deep.end());
  }
  return results;
}

}  // namespace fclust
