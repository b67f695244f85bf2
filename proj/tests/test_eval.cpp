#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "fclust/eval.hpp"

using namespace fclust;

namespace {

Clustering clustering_of(std::vector<VertexList> sets) {
  Clustering out;
  for (std::size_t i = 0; i < sets.size(); ++i)
    out.clusters.push_back({static_cast<int>(i) + 1, std::move(sets[i])});
  return out;
}

Clustering planted_clustering(const GroundTruth& truth) {
  std::map<int, VertexList> groups;
  for (VertexId v = 1; v <= truth.n(); ++v) groups[truth.label(v)].push_back(v);
  std::vector<VertexList> sets;
  for (auto& [label, members] : groups) sets.push_back(std::move(members));
  return clustering_of(std::move(sets));
}

}  // namespace

TEST_SUITE_BEGIN("eval");

TEST_CASE("perfect predictions score zero") {
  GroundTruth truth = sample_instance(Balanced{30, 3}, 1);
  const EvalReport report = misclassification_error(planted_clustering(truth), truth);
  CHECK(report.misclassification == 0.0);
  CHECK(report.exact);
  CHECK(report.unclustered_count == 0);
}

TEST_CASE("label permutations are free") {
  GroundTruth truth({1, 1, 1, 2, 2, 2});
  const Clustering swapped = clustering_of({{4, 5, 6}, {1, 2, 3}});
  const EvalReport report = misclassification_error(swapped, truth);
  CHECK(report.misclassification == 0.0);
  CHECK(report.exact);
}

TEST_CASE("optimal assignment on the overlap matrix") {
  // truth (1,1,1,2,2,2); predictions {1,2,4}, {3,5,6}: best matching
  // covers 4 vertices, so 2 of 6 are wrong.
  GroundTruth truth({1, 1, 1, 2, 2, 2});
  const Clustering predicted = clustering_of({{1, 2, 4}, {3, 5, 6}});
  const EvalReport report = misclassification_error(predicted, truth);
  CHECK(report.misclassification == doctest::Approx(2.0 / 6.0));
  CHECK_FALSE(report.exact);
}

TEST_CASE("unclustered vertices count unless forgiven below the floor") {
  GroundTruth truth({1, 1, 1, 1, 1, 2, 2});
  Clustering predicted = clustering_of({{1, 2, 3, 4, 5}});
  predicted.unclustered = {6, 7};

  const EvalReport strict = misclassification_error(predicted, truth);
  CHECK(strict.misclassification == doctest::Approx(2.0 / 7.0));
  CHECK(strict.unclustered_count == 2);
  CHECK_FALSE(strict.exact);

  EvalOptions forgive;
  forgive.forgive_below_floor = true;
  forgive.floor_size = 3;  // the 2-cluster is below the floor
  const EvalReport lenient = misclassification_error(predicted, truth, forgive);
  CHECK(lenient.misclassification == 0.0);
  CHECK(lenient.unclustered_count == 2);
  CHECK_FALSE(lenient.exact);  // exact still requires a full cover
}

TEST_CASE("overlapping predictions are rejected") {
  GroundTruth truth({1, 1, 2, 2});
  const Clustering bad = clustering_of({{1, 2}, {2, 3}});
  CHECK_THROWS_AS(misclassification_error(bad, truth), DomainError);
  const Clustering out_of_range = clustering_of({{1, 9}});
  CHECK_THROWS_AS(misclassification_error(out_of_range, truth), DomainError);
}

TEST_CASE("matched permutation reports the chosen mapping") {
  GroundTruth truth({1, 1, 2, 2, 3, 3});
  const Clustering predicted = clustering_of({{5, 6}, {1, 2}});
  const EvalReport report = misclassification_error(predicted, truth);
  REQUIRE(report.matched_permutation.size() == 2);
  CHECK(report.matched_permutation[0] == std::pair<int, int>{1, 3});
  CHECK(report.matched_permutation[1] == std::pair<int, int>{2, 1});
}

TEST_CASE("gap index on the worked example") {
  const auto h = find_gap_index({50, 48, 10, 2}, 110, 4, 0.5);
  REQUIRE(h.has_value());
  CHECK(*h == 2);
}

TEST_CASE("balanced size lists have no gap index") {
  CHECK_FALSE(find_gap_index({25, 25, 25, 25}, 100, 4, 0.5).has_value());
  CHECK_FALSE(find_gap_index({30, 26, 24, 20}, 100, 4, 0.5).has_value());  // s_k = 20 >= 12.5
}

TEST_CASE("gap index validates its inputs") {
  CHECK_THROWS_AS(find_gap_index({10, 20, 5}, 35, 3, 0.5), DomainError);  // not descending
  CHECK_THROWS_AS(find_gap_index({10, 9, 5}, 30, 3, 0.5), DomainError);   // wrong sum
  CHECK_THROWS_AS(find_gap_index({10, 9, 5}, 24, 2, 0.5), DomainError);   // wrong length
  CHECK_THROWS_AS(find_gap_index({10, 9, 5}, 24, 3, 0.7), DomainError);   // b out of range
}

TEST_CASE("gap index satisfies both defining inequalities on random instances") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + static_cast<int>(uniform_below(rng, 6));
    const double b = 0.1 + 0.4 * rng.unit();
    const long n = static_cast<long>(std::ceil(k / b)) + k + static_cast<long>(uniform_below(rng, 2000));
    const double limit = b * static_cast<double>(n) / k;
    long small_max = static_cast<long>(std::floor(limit));
    if (static_cast<double>(small_max) >= limit) --small_max;
    if (small_max < 1) continue;
    const long smallest = 1 + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(small_max)));
    std::vector<long> sizes(static_cast<std::size_t>(k), smallest);
    for (long extra = n - smallest * k; extra > 0; --extra)
      ++sizes[static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(k - 1)))];
    std::sort(sizes.begin(), sizes.end(), std::greater<>());

    const auto h = find_gap_index(sizes, n, k, b);
    REQUIRE(h.has_value());
    CHECK(*h <= k - 1);
    const double nk = static_cast<double>(n) / k;
    const double step = b * static_cast<double>(n) / (static_cast<double>(k) * k);
    CHECK(static_cast<double>(sizes[static_cast<std::size_t>(*h - 1)]) >= nk - *h * step);
    CHECK(static_cast<double>(sizes[static_cast<std::size_t>(*h)]) < nk - (*h + 1) * step);
    CHECK(static_cast<double>(sizes[static_cast<std::size_t>(*h - 1)] -
                              sizes[static_cast<std::size_t>(*h)]) >= step - 1e-9);
  }
}

TEST_CASE("brute force recovers noiseless triangles") {
  GroundTruth truth({1, 1, 1, 2, 2, 2});
  FaultyOracle oracle(truth, 1.0, 1);
  const SignedSubgraph graph = build_query_graph(oracle, oracle.all_vertices());
  const Clustering best = brute_force_ml_clustering(graph, 2);
  const EvalReport report = misclassification_error(best, truth);
  CHECK(report.exact);
}

TEST_CASE("brute force on a single vertex") {
  MatrixXb adj = MatrixXb::Constant(1, 1, false);
  const SignedSubgraph graph(VertexList{1}, adj);
  const Clustering best = brute_force_ml_clustering(graph, 3);
  REQUIRE(best.clusters.size() == 1);
  CHECK(best.clusters[0].members == VertexList{1});
}

TEST_CASE("brute force refuses large graphs") {
  MatrixXb adj = MatrixXb::Constant(15, 15, false);
  VertexList ids(15);
  std::iota(ids.begin(), ids.end(), 1);
  const SignedSubgraph graph(ids, adj);
  CHECK_THROWS_AS(brute_force_ml_clustering(graph, 2), DomainError);
}

TEST_CASE("brute force tracks the planted partition at moderate noise") {
  int agree = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GroundTruth truth = sample_instance(ExactSizes{{5, 5}}, 21);
    FaultyOracle oracle(truth, 0.8, seed);
    const SignedSubgraph graph = build_query_graph(oracle, oracle.all_vertices());
    const Clustering best = brute_force_ml_clustering(graph, 2);
    if (misclassification_error(best, truth).exact) ++agree;
  }
  CHECK(agree >= 45);
}

TEST_CASE("chernoff bound evaluates and is monotone") {
  CHECK(chernoff_failure_bound(100, 0.0) == 1.0);
  CHECK(chernoff_failure_bound(100, 10.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(chernoff_failure_bound(100, 20.0) < chernoff_failure_bound(100, 10.0));
  CHECK(chernoff_failure_bound(200, 10.0) > chernoff_failure_bound(100, 10.0));
  CHECK_THROWS_AS(chernoff_failure_bound(0, 1.0), DomainError);
}

TEST_CASE("assignment equals permutation brute force") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 1 + static_cast<int>(uniform_below(rng, 4));
    const int c = 1 + static_cast<int>(uniform_below(rng, 4));
    std::vector<std::vector<long>> weight(static_cast<std::size_t>(r),
                                          std::vector<long>(static_cast<std::size_t>(c)));
    for (auto& row : weight)
      for (long& w : row) w = static_cast<long>(uniform_below(rng, 30));

    const std::vector<int> match = max_assignment(weight);
    long got = 0;
    std::set<int> used;
    for (int i = 0; i < r; ++i) {
      const int j = match[static_cast<std::size_t>(i)];
      if (j < 0) continue;
      CHECK(used.insert(j).second);
      got += weight[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

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
    CHECK(got == best);
  }
}

TEST_SUITE_END();
