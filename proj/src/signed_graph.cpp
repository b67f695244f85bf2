#include "fclust/signed_graph.hpp"

#include <ostream>
#include <unordered_set>

namespace fclust {

SignedSubgraph::SignedSubgraph(VertexList vertices, MatrixXb pos_adj)
    : vertices_(std::move(vertices)), pos_adj_(std::move(pos_adj)) {
  const Eigen::Index t = pos_adj_.rows();
  if (pos_adj_.cols() != t || static_cast<Eigen::Index>(vertices_.size()) != t)
    throw DomainError("SignedSubgraph: adjacency and vertex list sizes disagree");
  for (Eigen::Index i = 0; i < t; ++i) {
    if (pos_adj_(i, i)) throw DomainError("SignedSubgraph: diagonal must be false");
    for (Eigen::Index j = i + 1; j < t; ++j)
      if (pos_adj_(i, j) != pos_adj_(j, i))
        throw DomainError("SignedSubgraph: adjacency must be symmetric");
  }
}

SignedSubgraph build_query_graph(FaultyOracle& oracle, const VertexList& T) {
  if (T.size() < 2) throw DomainError("build_query_graph: need at least two vertices");
  std::unordered_set<VertexId> distinct(T.begin(), T.end());
  if (distinct.size() != T.size())
    throw DomainError("build_query_graph: duplicate vertices in sample");

  const Eigen::Index t = static_cast<Eigen::Index>(T.size());
  MatrixXb adj = MatrixXb::Constant(t, t, false);
  for (Eigen::Index i = 0; i < t; ++i)
    for (Eigen::Index j = i + 1; j < t; ++j) {
      const bool pos = oracle.query(T[static_cast<std::size_t>(i)],
                                    T[static_cast<std::size_t>(j)]) > 0;
      adj(i, j) = pos;
      adj(j, i) = pos;
    }
  return SignedSubgraph(T, std::move(adj));
}

Eigen::Index positive_degree(const SignedSubgraph& graph, Eigen::Index i) {
  if (i < 0 || i >= graph.size()) throw DomainError("positive_degree: position out of range");
  return graph.positive_adjacency().row(i).count();
}

SignedSubgraph filter_by_degree(const SignedSubgraph& graph, double threshold) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < graph.size(); ++i)
    if (static_cast<double>(positive_degree(graph, i)) >= threshold) keep.push_back(i);

  const Eigen::Index m = static_cast<Eigen::Index>(keep.size());
  VertexList vertices;
  vertices.reserve(keep.size());
  for (Eigen::Index i : keep) vertices.push_back(graph.vertex(i));
  MatrixXb adj(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) adj(a, b) = graph.positive_edge(keep[a], keep[b]);
  return SignedSubgraph(std::move(vertices), std::move(adj));
}

void write_edge_list(const SignedSubgraph& graph, std::ostream& out) {
  const Eigen::Index t = graph.size();
  long m = 0;
  for (Eigen::Index i = 0; i < t; ++i)
    for (Eigen::Index j = i + 1; j < t; ++j)
      if (graph.positive_edge(i, j)) ++m;
  out << t << " " << m << "\n";
  for (Eigen::Index i = 0; i < t; ++i)
    for (Eigen::Index j = i + 1; j < t; ++j)
      if (graph.positive_edge(i, j)) out << graph.vertex(i) << " " << graph.vertex(j) << "\n";
}

}  // namespace fclust
