#include <sstream>

#include "doctest.h"
#include "fclust/signed_graph.hpp"

using namespace fclust;

namespace {

SignedSubgraph hand_graph() {
  // 4 vertices, positive edges {(1,2), (1,3)}.
  MatrixXb adj = MatrixXb::Constant(4, 4, false);
  adj(0, 1) = adj(1, 0) = true;
  adj(0, 2) = adj(2, 0) = true;
  return SignedSubgraph({1, 2, 3, 4}, adj);
}

}  // namespace

TEST_SUITE_BEGIN("signed_graph");

TEST_CASE("noiseless sample within one cluster is a complete positive graph") {
  GroundTruth truth = sample_instance(ExactSizes{{8, 8}}, 1);
  FaultyOracle oracle(truth, 1.0, 1);
  VertexList sample;
  for (VertexId v = 1; v <= truth.n(); ++v)
    if (truth.label(v) == 1) sample.push_back(v);
  const SignedSubgraph graph = build_query_graph(oracle, sample);
  for (Eigen::Index i = 0; i < graph.size(); ++i)
    CHECK(positive_degree(graph, i) == graph.size() - 1);
}

TEST_CASE("noiseless sample across clusters has positive edges exactly inside them") {
  GroundTruth truth = sample_instance(ExactSizes{{6, 6}}, 2);
  FaultyOracle oracle(truth, 1.0, 2);
  const SignedSubgraph graph = build_query_graph(oracle, oracle.all_vertices());
  for (Eigen::Index i = 0; i < graph.size(); ++i)
    for (Eigen::Index j = i + 1; j < graph.size(); ++j)
      CHECK(graph.positive_edge(i, j) ==
            (truth.label(graph.vertex(i)) == truth.label(graph.vertex(j))));
}

TEST_CASE("building on 20 vertices consumes 190 distinct pairs") {
  GroundTruth truth = sample_instance(Balanced{40, 2}, 3);
  FaultyOracle oracle(truth, 0.5, 3);
  VertexList sample;
  for (VertexId v = 1; v <= 20; ++v) sample.push_back(v);
  build_query_graph(oracle, sample);
  CHECK(oracle.stats().distinct_pairs == 190);
  CHECK(oracle.stats().total_calls == 190);
}

TEST_CASE("duplicate or undersized samples are rejected") {
  GroundTruth truth({1, 1, 2, 2});
  FaultyOracle oracle(truth, 0.5, 1);
  CHECK_THROWS_AS(build_query_graph(oracle, {1, 2, 1}), DomainError);
  CHECK_THROWS_AS(build_query_graph(oracle, {1}), DomainError);
}

TEST_CASE("positive degrees on a hand-built graph") {
  const SignedSubgraph graph = hand_graph();
  CHECK(positive_degree(graph, 0) == 2);
  CHECK(positive_degree(graph, 1) == 1);
  CHECK(positive_degree(graph, 2) == 1);
  CHECK(positive_degree(graph, 3) == 0);
  CHECK_THROWS_AS(positive_degree(graph, 4), DomainError);
  CHECK_THROWS_AS(positive_degree(graph, -1), DomainError);
}

TEST_CASE("degree filter keeps thresholds inclusive and may empty the graph") {
  const SignedSubgraph graph = hand_graph();

  const SignedSubgraph unchanged = filter_by_degree(graph, 0.0);
  CHECK(unchanged.size() == 4);
  CHECK((unchanged.positive_adjacency().array() == graph.positive_adjacency().array()).all());

  const SignedSubgraph empty = filter_by_degree(graph, 4.0);
  CHECK(empty.size() == 0);

  const SignedSubgraph filtered = filter_by_degree(graph, 1.0);
  CHECK(filtered.vertices() == VertexList{1, 2, 3});
  CHECK(filtered.positive_edge(0, 1));
  CHECK(filtered.positive_edge(0, 2));
  CHECK_FALSE(filtered.positive_edge(1, 2));
}

TEST_CASE("filtered adjacency equals the restriction of the original") {
  GroundTruth truth = sample_instance(Balanced{30, 3}, 4);
  FaultyOracle oracle(truth, 0.4, 4);
  const SignedSubgraph graph = build_query_graph(oracle, oracle.all_vertices());
  const SignedSubgraph filtered = filter_by_degree(graph, 14.0);

  std::vector<Eigen::Index> original_pos;
  for (Eigen::Index i = 0; i < graph.size(); ++i)
    if (static_cast<double>(positive_degree(graph, i)) >= 14.0) original_pos.push_back(i);
  REQUIRE(static_cast<Eigen::Index>(original_pos.size()) == filtered.size());
  for (Eigen::Index a = 0; a < filtered.size(); ++a)
    for (Eigen::Index b = 0; b < filtered.size(); ++b)
      CHECK(filtered.positive_edge(a, b) ==
            graph.positive_edge(original_pos[static_cast<std::size_t>(a)],
                                original_pos[static_cast<std::size_t>(b)]));
}

TEST_CASE("positive degree sum is even") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GroundTruth truth = sample_instance(Balanced{25, 2}, seed);
    FaultyOracle oracle(truth, 0.6, seed);
    const SignedSubgraph graph = build_query_graph(oracle, oracle.all_vertices());
    long sum = 0;
    for (Eigen::Index i = 0; i < graph.size(); ++i) sum += positive_degree(graph, i);
    CHECK(sum % 2 == 0);
  }
}

TEST_CASE("construction is deterministic in the oracle seed") {
  GroundTruth truth = sample_instance(Balanced{24, 2}, 5);
  FaultyOracle a(truth, 0.5, 9);
  FaultyOracle b(truth, 0.5, 9);
  const SignedSubgraph ga = build_query_graph(a, a.all_vertices());
  const SignedSubgraph gb = build_query_graph(b, b.all_vertices());
  CHECK((ga.positive_adjacency().array() == gb.positive_adjacency().array()).all());
}

TEST_CASE("edge list dump carries a header and one line per edge") {
  std::ostringstream out;
  write_edge_list(hand_graph(), out);
  CHECK(out.str() == "4 2\n1 2\n1 3\n");
}

TEST_SUITE_END();
