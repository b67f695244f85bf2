#include "fclust/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fclust {

// ---------------------------------------------------------------------------
// Assignment
// ---------------------------------------------------------------------------

namespace {

// Hungarian algorithm with potentials on a square min-cost matrix,
// O(N^3). Rows and columns are 0-based; returns row -> column.
std::vector<int> hungarian_min(const std::vector<std::vector<double>>& cost) {
  const int nsize = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> row_pot(static_cast<std::size_t>(nsize) + 1, 0.0);
  std::vector<double> col_pot(static_cast<std::size_t>(nsize) + 1, 0.0);
  std::vector<int> col_match(static_cast<std::size_t>(nsize) + 1, 0);  // column -> row
  std::vector<int> way(static_cast<std::size_t>(nsize) + 1, 0);

  for (int row = 1; row <= nsize; ++row) {
    col_match[0] = row;
    int col0 = 0;
    std::vector<double> min_slack(static_cast<std::size_t>(nsize) + 1, inf);
    std::vector<char> used(static_cast<std::size_t>(nsize) + 1, false);
    do {
      used[static_cast<std::size_t>(col0)] = true;
      const int row0 = col_match[static_cast<std::size_t>(col0)];
      double delta = inf;
      int col1 = -1;
      for (int col = 1; col <= nsize; ++col) {
        if (used[static_cast<std::size_t>(col)]) continue;
        const double cur = cost[static_cast<std::size_t>(row0 - 1)][static_cast<std::size_t>(col - 1)] -
                           row_pot[static_cast<std::size_t>(row0)] -
                           col_pot[static_cast<std::size_t>(col)];
        if (cur < min_slack[static_cast<std::size_t>(col)]) {
          min_slack[static_cast<std::size_t>(col)] = cur;
          way[static_cast<std::size_t>(col)] = col0;
        }
        if (min_slack[static_cast<std::size_t>(col)] < delta) {
          delta = min_slack[static_cast<std::size_t>(col)];
          col1 = col;
        }
      }
      for (int col = 0; col <= nsize; ++col) {
        if (used[static_cast<std::size_t>(col)]) {
          row_pot[static_cast<std::size_t>(col_match[static_cast<std::size_t>(col)])] += delta;
          col_pot[static_cast<std::size_t>(col)] -= delta;
        } else {
          min_slack[static_cast<std::size_t>(col)] -= delta;
        }
      }
      col0 = col1;
    } while (col_match[static_cast<std::size_t>(col0)] != 0);
    do {
      const int col1 = way[static_cast<std::size_t>(col0)];
      col_match[static_cast<std::size_t>(col0)] = col_match[static_cast<std::size_t>(col1)];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<int> row_match(static_cast<std::size_t>(nsize), -1);
  for (int col = 1; col <= nsize; ++col)
    row_match[static_cast<std::size_t>(col_match[static_cast<std::size_t>(col)] - 1)] = col - 1;
  return row_match;
}

}  // namespace

std::vector<int> max_assignment(const std::vector<std::vector<long>>& weight) {
  const int rows = static_cast<int>(weight.size());
  if (rows == 0) return {};
  const int cols = static_cast<int>(weight[0].size());
  const int nsize = std::max(rows, cols);

  // Pad to square and negate: unmatched pairs carry weight 0.
  std::vector<std::vector<double>> cost(static_cast<std::size_t>(nsize),
                                        std::vector<double>(static_cast<std::size_t>(nsize), 0.0));
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(weight[static_cast<std::size_t>(r)].size()) != cols)
      throw DomainError("max_assignment: ragged weight matrix");
    for (int c = 0; c < cols; ++c)
      cost[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          -static_cast<double>(weight[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  }

  const std::vector<int> match = hungarian_min(cost);
  std::vector<int> out(static_cast<std::size_t>(rows), -1);
  for (int r = 0; r < rows; ++r) {
    const int c = match[static_cast<std::size_t>(r)];
    out[static_cast<std::size_t>(r)] = (c < cols) ? c : -1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Misclassification
// ---------------------------------------------------------------------------

EvalReport misclassification_error(const Clustering& predicted, const GroundTruth& truth,
                                   const EvalOptions& options) {
  const long n = truth.n();
  const int true_k = truth.k();

  std::vector<int> assigned_to(static_cast<std::size_t>(n) + 1, -1);  // vertex -> cluster idx
  for (std::size_t c = 0; c < predicted.clusters.size(); ++c) {
    for (VertexId v : predicted.clusters[c].members) {
      if (v < 1 || v > n) throw DomainError("misclassification_error: vertex out of range");
      if (assigned_to[static_cast<std::size_t>(v)] != -1)
        throw DomainError("misclassification_error: vertex appears in two clusters");
      assigned_to[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
  }

  const int pred_k = static_cast<int>(predicted.clusters.size());
  std::vector<std::vector<long>> overlap(static_cast<std::size_t>(pred_k),
                                         std::vector<long>(static_cast<std::size_t>(true_k), 0));
  long clustered = 0;
  for (VertexId v = 1; v <= n; ++v) {
    const int c = assigned_to[static_cast<std::size_t>(v)];
    if (c < 0) continue;
    ++clustered;
    ++overlap[static_cast<std::size_t>(c)][static_cast<std::size_t>(truth.label(v) - 1)];
  }

  EvalReport report;
  long matched = 0;
  if (pred_k > 0) {
    const std::vector<int> match = max_assignment(overlap);
    for (int c = 0; c < pred_k; ++c) {
      const int t = match[static_cast<std::size_t>(c)];
      report.matched_permutation.emplace_back(predicted.clusters[static_cast<std::size_t>(c)].id,
                                              t < 0 ? 0 : t + 1);
      if (t >= 0) matched += overlap[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)];
    }
  }

  const std::vector<long> sizes = truth.cluster_sizes();
  long unclustered = 0;
  long unclustered_errors = 0;
  for (VertexId v = 1; v <= n; ++v) {
    if (assigned_to[static_cast<std::size_t>(v)] >= 0) continue;
    ++unclustered;
    const long true_size = sizes[static_cast<std::size_t>(truth.label(v) - 1)];
    if (!(options.forgive_below_floor && true_size < options.floor_size)) ++unclustered_errors;
  }

  const long errors = (clustered - matched) + unclustered_errors;
  report.misclassification = static_cast<double>(errors) / static_cast<double>(n);
  report.unclustered_count = unclustered;
  report.exact = errors == 0 && unclustered == 0;
  return report;
}

// ---------------------------------------------------------------------------
// Size gap
// ---------------------------------------------------------------------------

std::optional<int> find_gap_index(const std::vector<long>& sizes, long n, int k, double b) {
  if (k < 1 || static_cast<int>(sizes.size()) != k)
    throw DomainError("find_gap_index: size list length must equal k");
  if (b < 0.0 || b > 0.5) throw DomainError("find_gap_index: b must lie in [0, 1/2]");
  long sum = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw DomainError("find_gap_index: sizes must be positive");
    if (i > 0 && sizes[i] > sizes[i - 1])
      throw DomainError("find_gap_index: sizes must be descending");
    sum += sizes[i];
  }
  if (sum != n) throw DomainError("find_gap_index: sizes must sum to n");

  const double nk = static_cast<double>(n) / k;
  if (static_cast<double>(sizes.back()) >= b * nk) return std::nullopt;

  const double step = b * static_cast<double>(n) / (static_cast<double>(k) * k);
  for (int i = k; i >= 1; --i)
    if (static_cast<double>(sizes[static_cast<std::size_t>(i - 1)]) >= nk - i * step) return i;
  return std::nullopt;  // unreachable for valid inputs; s_1 always qualifies
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

namespace {

struct BruteForceSearch {
  const SignedSubgraph& graph;
  int max_parts;
  int n;
  std::vector<int> labels;
  std::vector<int> best_labels;
  long best_score = -1;
  long score = 0;

  void run(int pos, int used) {
    if (pos == n) {
      if (score > best_score) {
        best_score = score;
        best_labels = labels;
      }
      return;
    }
    const int limit = std::min(used + 1, max_parts);
    for (int lab = 0; lab < limit; ++lab) {
      long gained = 0;
      for (int j = 0; j < pos; ++j) {
        const bool same = labels[static_cast<std::size_t>(j)] == lab;
        const bool pos_edge = graph.positive_edge(j, pos);
        if (same == pos_edge) ++gained;
      }
      labels[static_cast<std::size_t>(pos)] = lab;
      score += gained;
      run(pos + 1, std::max(used, lab + 1));
      score -= gained;
    }
  }
};

}  // namespace

Clustering brute_force_ml_clustering(const SignedSubgraph& graph, int k) {
  const int n = static_cast<int>(graph.size());
  if (n < 1) throw DomainError("brute_force_ml_clustering: empty graph");
  if (n > 14) throw DomainError("brute_force_ml_clustering: refused for n > 14");
  if (k < 1) throw DomainError("brute_force_ml_clustering: k must be positive");
  for (int i = 0; i < n; ++i)
    if (graph.vertex(i) != i + 1)
      throw DomainError("brute_force_ml_clustering: graph vertices must be 1..n in order");

  BruteForceSearch search{graph, k, n, std::vector<int>(static_cast<std::size_t>(n), 0), {}, -1, 0};
  search.run(0, 0);

  const int parts = *std::max_element(search.best_labels.begin(), search.best_labels.end()) + 1;
  Clustering result;
  result.clusters.resize(static_cast<std::size_t>(parts));
  for (int c = 0; c < parts; ++c) result.clusters[static_cast<std::size_t>(c)].id = c + 1;
  for (int i = 0; i < n; ++i)
    result.clusters[static_cast<std::size_t>(search.best_labels[static_cast<std::size_t>(i)])]
        .members.push_back(i + 1);
  return result;
}

double chernoff_failure_bound(long t, double lambda) {
  if (t < 1) throw DomainError("chernoff_failure_bound: t must be at least 1");
  if (lambda < 0.0) throw DomainError("chernoff_failure_bound: lambda must be nonnegative");
  return std::exp(-2.0 * lambda * lambda / static_cast<double>(t));
}

}  // namespace fclust
