#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "fclust/errors.hpp"
#include "fclust/rng.hpp"

namespace fclust {

/// Vertices are 1-based integers, matching V = [n]. Labels are contiguous
/// 1..k.
using VertexId = int;
using VertexList = std::vector<VertexId>;

/// The latent partition V_1..V_k behind an oracle instance.
class GroundTruth {
 public:
  /// labels[v-1] is the cluster of vertex v; k is taken as the maximum
  /// label. Throws DomainError unless labels are contiguous 1..k with
  /// every cluster nonempty.
  explicit GroundTruth(std::vector<int> labels);

  long n() const { return static_cast<long>(labels_.size()); }
  int k() const { return k_; }
  int label(VertexId v) const;

  /// Sizes of clusters 1..k (index 0 = cluster 1). Sums to n.
  std::vector<long> cluster_sizes() const;

  const std::vector<int>& labels() const { return labels_; }

  /// Instance file format: JSON object {"n": ..., "k": ..., "labels": [...]}.
  static GroundTruth read_json(std::istream& in);
  static GroundTruth load_file(const std::string& path);
  void write_json(std::ostream& out) const;
  void save_file(const std::string& path) const;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

/// +1 iff u and v share a cluster, -1 otherwise. u == v or out-of-range
/// vertices are rejected.
int tau(const GroundTruth& truth, VertexId u, VertexId v);

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

struct ExactSizes {
  std::vector<long> sizes;
};

/// Sizes as equal as possible: ceil(n/k) for the first n mod k clusters,
/// floor(n/k) for the rest.
struct Balanced {
  long n = 0;
  int k = 0;
};

/// Every cluster gets at least b*n/k vertices; the remainder is spread
/// uniformly at random.
struct BBalanced {
  long n = 0;
  int k = 0;
  double b = 0;
};

/// h large clusters (>= n/k each) and k-h small ones (< b*n/k each), so
/// the size-gap condition holds at index h and the instance is unbalanced.
struct GapShaped {
  long n = 0;
  int k = 0;
  int h = 0;
  double b = 0;
};

using InstanceSpec = std::variant<ExactSizes, Balanced, BBalanced, GapShaped>;

/// Realizes a spec as a GroundTruth: cluster sizes per the spec, labels
/// assigned by a seeded shuffle. Throws InfeasibleSpecError when the
/// requested sizes cannot exist.
GroundTruth sample_instance(const InstanceSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

struct QueryStats {
  std::uint64_t distinct_pairs = 0;  // unordered pairs queried at least once
  std::uint64_t total_calls = 0;     // every query() invocation
};

/// Pairwise same-cluster oracle with persistent noise.
///
/// An answer is the sign of tau(u,v) * eta_{u,v}, where eta is +1 with
/// probability 1/2 + delta/2. eta is a pure function of (seed, min(u,v),
/// max(u,v)), so repeats and swapped arguments return the identical sign
/// with no memoization, and (instance, delta, seed) replays every answer
/// bit-exactly.
///
/// Thread safety: answer() is pure and may be called concurrently;
/// query() updates the accountant and the oracle is single-caller. Run
/// concurrent pipelines on separate oracle instances.
class FaultyOracle {
 public:
  /// delta must lie in (0, 1]; delta = 0 carries no signal and is
  /// rejected at construction.
  FaultyOracle(GroundTruth truth, double delta, std::uint64_t seed);

  /// Accounted query. Throws DomainError on u == v or out of range.
  int query(VertexId u, VertexId v);

  /// The same answer query() would give, without touching the accountant.
  int answer(VertexId u, VertexId v) const;

  QueryStats stats() const { return stats_; }

  const GroundTruth& truth() const { return *truth_; }
  double delta() const { return delta_; }
  std::uint64_t seed() const { return seed_; }

  /// Fresh deterministic stream for sampling decisions, keyed by the
  /// oracle seed and a per-call counter. Consecutive calls yield
  /// independent streams; a rerun replays the same sequence.
  SplitMix64 derive_rng();

  /// All vertices 1..n, ascending.
  VertexList all_vertices() const;

 private:
  std::uint64_t pair_index(VertexId u, VertexId v) const;

  std::shared_ptr<const GroundTruth> truth_;
  double delta_;
  std::uint64_t seed_;
  QueryStats stats_;
  std::uint64_t draw_counter_ = 0;

  // Exact distinct-pair tracking: a bitset over all n(n-1)/2 pairs when
  // that fits in 32 MB, a hash set otherwise.
  std::vector<std::uint64_t> seen_bits_;
  std::unordered_set<std::uint64_t> seen_set_;
  bool use_bitset_;
};

inline QueryStats query_stats(const FaultyOracle& oracle) { return oracle.stats(); }

}  // namespace fclust
