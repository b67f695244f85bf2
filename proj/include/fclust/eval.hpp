#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fclust/algorithms.hpp"
#include "fclust/signed_graph.hpp"

namespace fclust {

struct EvalReport {
  double misclassification = 0.0;  // fraction of n, in [0,1]
  bool exact = false;              // misclassification == 0 and nothing unclustered
  std::vector<std::pair<int, int>> matched_permutation;  // predicted id -> true id
  long unclustered_count = 0;
};

struct EvalOptions {
  /// When set, unclustered vertices whose true cluster is smaller than
  /// floor_size do not count as errors (they are below the recovery
  /// floor). They still count in unclustered_count.
  bool forgive_below_floor = false;
  long floor_size = 0;
};

/// Fraction of vertices wrongly assigned, minimized over injective maps
/// from predicted to true cluster ids. The map is found by optimal
/// assignment on the overlap matrix, not greedily.
EvalReport misclassification_error(const Clustering& predicted, const GroundTruth& truth,
                                   const EvalOptions& options = {});

/// Largest index i (1-based) with sizes[i] >= n/k - i*b*n/k^2, for
/// descending sizes summing to n. Returns nullopt in the balanced case
/// s_k >= b*n/k; otherwise the result is at most k-1 and
/// s_{h+1} < n/k - (h+1)*b*n/k^2.
std::optional<int> find_gap_index(const std::vector<long>& sizes, long n, int k, double b);

/// Exhaustive maximum-agreement clustering of a complete signed graph on
/// vertices 1..n into at most k parts. Agreements are positive edges
/// inside parts plus negative edges across; ties break to the
/// lexicographically smallest canonical labeling. Refuses n > 14.
Clustering brute_force_ml_clustering(const SignedSubgraph& graph, int k);

/// One-sided Chernoff-Hoeffding tail for t summands in [0,1]:
/// exp(-2 lambda^2 / t).
double chernoff_failure_bound(long t, double lambda);

/// Maximum-weight assignment of rows to columns (injective; unmatched
/// rows allowed when rows > cols). Returns row -> column, -1 for
/// unmatched. Exposed for oracle tests against permutation brute force.
std::vector<int> max_assignment(const std::vector<std::vector<long>>& weight);

}  // namespace fclust
