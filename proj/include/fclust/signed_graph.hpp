#pragma once

#include <Eigen/Core>
#include <iosfwd>

#include "fclust/oracle.hpp"

namespace fclust {

using MatrixXb = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// The positive-answer graph over a sample T: pos_adj(i,j) is true when
/// the oracle answered + for the pair (T[i], T[j]). Symmetric, false
/// diagonal. Immutable after construction and safe to share read-only.
class SignedSubgraph {
 public:
  SignedSubgraph() = default;
  SignedSubgraph(VertexList vertices, MatrixXb pos_adj);

  Eigen::Index size() const { return pos_adj_.rows(); }
  const VertexList& vertices() const { return vertices_; }
  VertexId vertex(Eigen::Index i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const MatrixXb& positive_adjacency() const { return pos_adj_; }
  bool positive_edge(Eigen::Index i, Eigen::Index j) const { return pos_adj_(i, j); }

 private:
  VertexList vertices_;
  MatrixXb pos_adj_;
};

/// Queries all pairs within T and assembles the positive-edge graph.
/// Exactly |T|(|T|-1)/2 unordered pairs hit the oracle. T needs at least
/// two distinct vertices.
SignedSubgraph build_query_graph(FaultyOracle& oracle, const VertexList& T);

/// Number of positive edges at position i.
Eigen::Index positive_degree(const SignedSubgraph& graph, Eigen::Index i);

/// Induced subgraph on positions whose degree in `graph` is >= threshold.
/// Degrees are measured once in the input, not recomputed iteratively.
/// An empty result is legal.
SignedSubgraph filter_by_degree(const SignedSubgraph& graph, double threshold);

/// Debug dump: header line "t m", then one "u v" line per positive edge.
void write_edge_list(const SignedSubgraph& graph, std::ostream& out);

}  // namespace fclust
