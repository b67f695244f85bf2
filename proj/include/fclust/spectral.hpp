#pragma once

#include <Eigen/Core>
#include <vector>

#include "fclust/signed_graph.hpp"

namespace fclust {

/// A partition of the input graph's positions: disjoint, covering, no
/// empty cluster.
struct PartitionResult {
  std::vector<std::vector<Eigen::Index>> clusters;
};

/// Adjacency as 0/1 doubles with the cross-cluster expectation
/// q = 1/2 - delta/2 subtracted from every off-diagonal entry, so the
/// expected matrix is delta on same-cluster off-diagonals and 0 across.
Eigen::MatrixXd centered_adjacency(const SignedSubgraph& graph, double delta);

/// Best rank-k approximation of a symmetric matrix, built from the k
/// eigenpairs of largest magnitude. Magnitude ties prefer positive
/// eigenvalues (the planted signal is positive), then lower index.
Eigen::MatrixXd rank_k_projection(const Eigen::MatrixXd& sym, int k);

/// Clusters the rows of a projected matrix into exactly k nonempty
/// groups: greedy largest-norm seeding with a data-driven distance
/// threshold, then nearest-mean reassignment to fixation (<= 100 rounds).
std::vector<std::vector<Eigen::Index>> cluster_projected_rows(const Eigen::MatrixXd& rows, int k);

/// Recovers a planted partition from the positive-edge graph of a
/// sample: center, project to rank k, cluster the projected rows.
///
/// Always returns a partition into exactly k nonempty clusters; on
/// planted inputs satisfying recovery_condition it matches the planted
/// partition with high probability (validated statistically). The
/// balance parameter b records the caller's promise and does not steer
/// the computation.
PartitionResult bal_partition(const SignedSubgraph& graph, int k, double delta, double b);

/// Sample-size condition for reliable recovery:
/// t >= c0 * k^2 * ln(t) / (b^2 * delta^2), natural log.
bool recovery_condition(long t, int k, double b, double delta, double c0);

}  // namespace fclust
