#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fclust/eval.hpp"
#include "fclust/oracle.hpp"

using namespace fclust;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("ground truth validates labels") {
  GroundTruth truth({1, 1, 2, 3, 3});
  CHECK(truth.n() == 5);
  CHECK(truth.k() == 3);
  CHECK(truth.cluster_sizes() == std::vector<long>{2, 1, 2});

  CHECK_THROWS_AS(GroundTruth({1, 3}), DomainError);   // cluster 2 unused
  CHECK_THROWS_AS(GroundTruth({0, 1}), DomainError);   // labels start at 1
  CHECK_THROWS_AS(GroundTruth({}), DomainError);
}

TEST_CASE("tau reflects shared labels and rejects self pairs") {
  GroundTruth truth({1, 1, 2});
  CHECK(tau(truth, 1, 2) == +1);
  CHECK(tau(truth, 1, 3) == -1);
  CHECK_THROWS_AS(tau(truth, 2, 2), DomainError);
  CHECK_THROWS_AS(tau(truth, 0, 1), DomainError);
  CHECK_THROWS_AS(tau(truth, 1, 4), DomainError);
}

TEST_CASE("tau is symmetric") {
  GroundTruth truth = sample_instance(Balanced{30, 4}, 7);
  for (VertexId u = 1; u <= 30; ++u)
    for (VertexId v = u + 1; v <= 30; ++v) CHECK(tau(truth, u, v) == tau(truth, v, u));
}

TEST_CASE("exact sizes are echoed") {
  GroundTruth truth = sample_instance(ExactSizes{{3, 3, 3}}, 1);
  CHECK(truth.n() == 9);
  CHECK(truth.k() == 3);
  CHECK(truth.cluster_sizes() == std::vector<long>{3, 3, 3});
}

TEST_CASE("balanced sizes are as equal as possible") {
  GroundTruth truth = sample_instance(Balanced{10, 3}, 2);
  std::vector<long> sizes = truth.cluster_sizes();
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  CHECK(sizes == std::vector<long>{4, 3, 3});
}

TEST_CASE("bbalanced respects the floor") {
  const long n = 100;
  const int k = 4;
  const double b = 0.6;
  GroundTruth truth = sample_instance(BBalanced{n, k, b}, 3);
  for (long size : truth.cluster_sizes())
    CHECK(static_cast<double>(size) >= b * static_cast<double>(n) / k);

  CHECK_THROWS_AS(sample_instance(BBalanced{10, 3, 1.0}, 1), InfeasibleSpecError);
}

TEST_CASE("gap-shaped instances satisfy the size-gap condition at h") {
  GroundTruth truth = sample_instance(GapShaped{110, 4, 2, 0.5}, 4);
  std::vector<long> sizes = truth.cluster_sizes();
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  const auto h = find_gap_index(sizes, 110, 4, 0.5);
  REQUIRE(h.has_value());
  CHECK(*h == 2);
  // the displayed inequalities at h = 2
  CHECK(static_cast<double>(sizes[1]) >= 110.0 / 4 - 2 * 0.5 * 110.0 / 16);
  CHECK(static_cast<double>(sizes[2]) < 110.0 / 4 - 3 * 0.5 * 110.0 / 16);

  CHECK_THROWS_AS(sample_instance(GapShaped{20, 4, 5, 0.5}, 1), InfeasibleSpecError);
  CHECK_THROWS_AS(sample_instance(GapShaped{12, 3, 1, 0.1}, 1), InfeasibleSpecError);
}

TEST_CASE("delta bounds are enforced") {
  GroundTruth truth({1, 1, 2, 2});
  CHECK_THROWS_AS(FaultyOracle(truth, 0.0, 1), DomainError);
  CHECK_THROWS_AS(FaultyOracle(truth, 1.5, 1), DomainError);
  CHECK_THROWS_AS(FaultyOracle(truth, -0.3, 1), DomainError);
}

TEST_CASE("noiseless oracle equals tau") {
  GroundTruth truth = sample_instance(Balanced{40, 3}, 5);
  FaultyOracle oracle(truth, 1.0, 11);
  for (VertexId u = 1; u <= 40; ++u)
    for (VertexId v = u + 1; v <= 40; ++v) CHECK(oracle.query(u, v) == tau(truth, u, v));
}

TEST_CASE("answers persist over repeats and are symmetric") {
  GroundTruth truth = sample_instance(Balanced{50, 2}, 6);
  FaultyOracle oracle(truth, 0.3, 12);
  const int first = oracle.query(7, 31);
  const auto pairs_after_first = oracle.stats().distinct_pairs;
  for (int r = 0; r < 1000; ++r) CHECK(oracle.query(7, 31) == first);
  CHECK(oracle.query(31, 7) == first);
  CHECK(oracle.stats().distinct_pairs == pairs_after_first);
}

TEST_CASE("self queries are rejected") {
  GroundTruth truth({1, 1, 2, 2});
  FaultyOracle oracle(truth, 0.5, 1);
  CHECK_THROWS_AS(oracle.query(2, 2), DomainError);
}

TEST_CASE("accounting counts canonical pairs") {
  GroundTruth truth({1, 1, 2, 2});
  FaultyOracle oracle(truth, 0.5, 1);
  CHECK(oracle.stats().distinct_pairs == 0);
  CHECK(oracle.stats().total_calls == 0);
  oracle.query(1, 2);
  oracle.query(2, 1);
  oracle.query(1, 3);
  CHECK(oracle.stats().distinct_pairs == 2);
  CHECK(oracle.stats().total_calls == 3);
}

TEST_CASE("same-cluster positive rate tracks 1/2 + delta/2") {
  const double delta = 0.5;
  GroundTruth truth = sample_instance(ExactSizes{{120, 120}}, 8);
  FaultyOracle oracle(truth, delta, 13);
  long pos = 0, total = 0;
  for (VertexId u = 1; u <= truth.n() && total < 5000; ++u)
    for (VertexId v = u + 1; v <= truth.n() && total < 5000; ++v) {
      if (truth.label(u) != truth.label(v)) continue;
      if (oracle.query(u, v) > 0) ++pos;
      ++total;
    }
  const double rate = static_cast<double>(pos) / static_cast<double>(total);
  const double p = 0.5 + 0.5 * delta;
  CHECK(std::abs(rate - p) <= 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(total)));
}

TEST_CASE("replay: same seed and instance reproduce every answer") {
  GroundTruth truth = sample_instance(Balanced{60, 3}, 9);
  FaultyOracle a(truth, 0.4, 77);
  FaultyOracle b(truth, 0.4, 77);
  for (VertexId u = 1; u <= 60; ++u)
    for (VertexId v = u + 1; v <= 60; ++v) CHECK(a.answer(u, v) == b.answer(u, v));

  FaultyOracle c(truth, 0.4, 78);  // a different seed must disagree somewhere
  long differs = 0;
  for (VertexId u = 1; u <= 60; ++u)
    for (VertexId v = u + 1; v <= 60; ++v)
      if (a.answer(u, v) != c.answer(u, v)) ++differs;
  CHECK(differs > 0);
}

TEST_CASE("instance files round-trip") {
  GroundTruth truth = sample_instance(Balanced{25, 4}, 10);
  std::stringstream buffer;
  truth.write_json(buffer);
  GroundTruth loaded = GroundTruth::read_json(buffer);
  CHECK(loaded.labels() == truth.labels());

  std::stringstream bad("{\"n\": 3, \"k\": 2}");
  CHECK_THROWS_AS(GroundTruth::read_json(bad), DomainError);
  std::stringstream mismatched("{\"n\": 5, \"k\": 2, \"labels\": [1,2]}");
  CHECK_THROWS_AS(GroundTruth::read_json(mismatched), DomainError);
}

TEST_CASE("derive_rng streams differ per call but replay across runs") {
  GroundTruth truth({1, 2});
  FaultyOracle a(truth, 0.5, 5);
  FaultyOracle b(truth, 0.5, 5);
  SplitMix64 a1 = a.derive_rng();
  SplitMix64 a2 = a.derive_rng();
  SplitMix64 b1 = b.derive_rng();
  CHECK(a1() == b1());
  CHECK(a1() != a2());
}

TEST_SUITE_END();
