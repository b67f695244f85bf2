#include "fclust/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fclust {

Eigen::MatrixXd centered_adjacency(const SignedSubgraph& graph, double delta) {
  const double q = 0.5 - 0.5 * delta;
  Eigen::MatrixXd m = graph.positive_adjacency().cast<double>();
  m.array() -= q;
  m.diagonal().setZero();
  return m;
}

Eigen::MatrixXd rank_k_projection(const Eigen::MatrixXd& sym, int k) {
  const Eigen::Index t = sym.rows();
  if (k >= t) return sym;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw DecompositionError("rank_k_projection: eigendecomposition failed");
  const Eigen::VectorXd& vals = solver.eigenvalues();
  const Eigen::MatrixXd& vecs = solver.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(t));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(vals[a]), mb = std::abs(vals[b]);
    const double tol = 1e-9 * std::max({1.0, ma, mb});
    if (std::abs(ma - mb) > tol) return ma > mb;
    if (vals[a] != vals[b]) return vals[a] > vals[b];
    return a < b;
  });

  Eigen::MatrixXd approx = Eigen::MatrixXd::Zero(t, t);
  for (int j = 0; j < k; ++j) {
    const Eigen::Index idx = order[static_cast<std::size_t>(j)];
    approx.noalias() += vals[idx] * (vecs.col(idx) * vecs.col(idx).transpose());
  }
  return approx;
}

namespace {

double row_dist2(const Eigen::MatrixXd& rows, Eigen::Index a, Eigen::Index b) {
  return (rows.row(a) - rows.row(b)).squaredNorm();
}

// k mutually-far rows: start from the largest-norm row, then repeatedly
// add the row farthest from the chosen set. Ties break to the lowest
// position index.
std::vector<Eigen::Index> farthest_point_set(const Eigen::MatrixXd& rows, int k) {
  const Eigen::Index t = rows.rows();
  std::vector<Eigen::Index> chosen;
  chosen.reserve(static_cast<std::size_t>(k));

  Eigen::Index first = 0;
  double best_norm = -1.0;
  for (Eigen::Index i = 0; i < t; ++i) {
    const double nrm = rows.row(i).squaredNorm();
    if (nrm > best_norm) {
      best_norm = nrm;
      first = i;
    }
  }
  chosen.push_back(first);

  std::vector<double> min_dist(static_cast<std::size_t>(t));
  for (Eigen::Index i = 0; i < t; ++i)
    min_dist[static_cast<std::size_t>(i)] = row_dist2(rows, i, first);

  while (static_cast<int>(chosen.size()) < k) {
    Eigen::Index next = -1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < t; ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      if (min_dist[static_cast<std::size_t>(i)] > best) {
        best = min_dist[static_cast<std::size_t>(i)];
        next = i;
      }
    }
    chosen.push_back(next);
    for (Eigen::Index i = 0; i < t; ++i)
      min_dist[static_cast<std::size_t>(i)] =
          std::min(min_dist[static_cast<std::size_t>(i)], row_dist2(rows, i, next));
  }
  return chosen;
}

}  // namespace

std::vector<std::vector<Eigen::Index>> cluster_projected_rows(const Eigen::MatrixXd& rows, int k) {
  const Eigen::Index t = rows.rows();
  if (k < 1) throw DomainError("cluster_projected_rows: k must be positive");
  if (static_cast<Eigen::Index>(k) > t)
    throw DomainError("cluster_projected_rows: k exceeds row count");

  // Distance threshold: half the minimum pairwise distance between k
  // mutually-far rows.
  const std::vector<Eigen::Index> far = farthest_point_set(rows, k);
  double min_gap2 = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < far.size(); ++a)
    for (std::size_t b = a + 1; b < far.size(); ++b)
      min_gap2 = std::min(min_gap2, row_dist2(rows, far[a], far[b]));
  const double radius2 = k == 1 ? std::numeric_limits<double>::infinity() : 0.25 * min_gap2;

  // Greedy seeding: k passes, each anchored at the largest-norm
  // unassigned row, gathering everything within the threshold.
  std::vector<int> assign(static_cast<std::size_t>(t), -1);
  for (int j = 0; j < k; ++j) {
    Eigen::Index anchor = -1;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < t; ++i) {
      if (assign[static_cast<std::size_t>(i)] >= 0) continue;
      const double nrm = rows.row(i).squaredNorm();
      if (nrm > best_norm) {
        best_norm = nrm;
        anchor = i;
      }
    }
    if (anchor < 0) break;  // duplicates exhausted the pool early
    for (Eigen::Index i = 0; i < t; ++i) {
      if (assign[static_cast<std::size_t>(i)] >= 0) continue;
      if (row_dist2(rows, i, anchor) <= radius2) assign[static_cast<std::size_t>(i)] = j;
    }
  }
  for (auto& a : assign)
    if (a < 0) a = 0;  // leftovers join the first group until reassignment

  auto sizes_of = [&](const std::vector<int>& as) {
    std::vector<long> sz(static_cast<std::size_t>(k), 0);
    for (int a : as) ++sz[static_cast<std::size_t>(a)];
    return sz;
  };
  auto means_of = [&](const std::vector<int>& as) {
    Eigen::MatrixXd means = Eigen::MatrixXd::Zero(k, rows.cols());
    const std::vector<long> sz = sizes_of(as);
    for (Eigen::Index i = 0; i < t; ++i) means.row(as[static_cast<std::size_t>(i)]) += rows.row(i);
    for (int j = 0; j < k; ++j)
      if (sz[static_cast<std::size_t>(j)] > 0)
        means.row(j) /= static_cast<double>(sz[static_cast<std::size_t>(j)]);
    return means;
  };

  // Keep every cluster nonempty: move the row farthest from its own mean
  // (among clusters with >= 2 rows) into each empty cluster.
  auto fix_empties = [&](std::vector<int>& as) {
    std::vector<long> sz = sizes_of(as);
    Eigen::MatrixXd means = means_of(as);
    for (int j = 0; j < k; ++j) {
      if (sz[static_cast<std::size_t>(j)] > 0) continue;
      Eigen::Index worst = -1;
      double worst_d = -1.0;
      for (Eigen::Index i = 0; i < t; ++i) {
        const int c = as[static_cast<std::size_t>(i)];
        if (sz[static_cast<std::size_t>(c)] < 2) continue;
        const double d = (rows.row(i) - means.row(c)).squaredNorm();
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      if (worst < 0) continue;  // k <= t rules this out
      --sz[static_cast<std::size_t>(as[static_cast<std::size_t>(worst)])];
      as[static_cast<std::size_t>(worst)] = j;
      ++sz[static_cast<std::size_t>(j)];
      means = means_of(as);
    }
  };
  fix_empties(assign);

  // Nearest-mean reassignment to fixation.
  for (int round = 0; round < 100; ++round) {
    const Eigen::MatrixXd means = means_of(assign);
    std::vector<int> next(static_cast<std::size_t>(t));
    for (Eigen::Index i = 0; i < t; ++i) {
      int best_j = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int j = 0; j < k; ++j) {
        const double d = (rows.row(i) - means.row(j)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best_j = j;
        }
      }
      next[static_cast<std::size_t>(i)] = best_j;
    }
    fix_empties(next);
    if (next == assign) break;
    assign = std::move(next);
  }

  std::vector<std::vector<Eigen::Index>> clusters(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < t; ++i)
    clusters[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])].push_back(i);
  return clusters;
}

PartitionResult bal_partition(const SignedSubgraph& graph, int k, double delta, double b) {
  (void)b;  // balance promise; see header
  if (k < 1) throw DomainError("bal_partition: k must be positive");
  if (graph.size() == 0) throw DomainError("bal_partition: empty graph");
  if (static_cast<Eigen::Index>(k) > graph.size())
    throw DomainError("bal_partition: k exceeds graph size");

  const Eigen::MatrixXd projected = rank_k_projection(centered_adjacency(graph, delta), k);
  return PartitionResult{cluster_projected_rows(projected, k)};
}

bool recovery_condition(long t, int k, double b, double delta, double c0) {
  if (t < 1 || k < 1 || b <= 0.0 || delta <= 0.0 || c0 < 0.0)
    throw DomainError("recovery_condition: arguments out of range");
  const double needed =
      c0 * static_cast<double>(k) * k * std::log(static_cast<double>(t)) / (b * b * delta * delta);
  return static_cast<double>(t) >= needed;
}

}  // namespace fclust
