#pragma once

#include <optional>
#include <vector>

#include "fclust/constants.hpp"
#include "fclust/oracle.hpp"

namespace fclust {

/// Output of a clustering run: disjoint labeled vertex sets over original
/// ids, plus the vertices the run could not place. `partial` marks runs
/// that stopped early because no candidate index was accepted.
struct Clustering {
  struct Cluster {
    int id = 0;
    VertexList members;  // ascending vertex ids
  };
  std::vector<Cluster> clusters;
  VertexList unclustered;
  bool partial = false;

  long clustered_count() const;
};

/// Majority vote of v against a reference set B: queries every pair
/// (v, w), w in B, and answers yes when at least |B|/2 came back positive.
/// v must not be a member of B.
bool belong_to_cluster(FaultyOracle& oracle, VertexId v, const VertexList& B);

/// What to do when a required sample size exceeds the vertex pool:
/// `strict` raises InsufficientVerticesError, `whole_pool` clamps the
/// sample to the entire pool (the pipelines' behavior).
enum class SampleClamp { strict, whole_pool };

/// Samples t = sample_mult * c0 * k^2 * ln n / (b^2 d^2) vertices, queries
/// all pairs, and partitions the sample spectrally with balance promise
/// b/2. Returns k sub-cluster candidates in original vertex ids, each
/// sorted ascending.
std::vector<VertexList> balanced_clustering(FaultyOracle& oracle, const VertexList& V, int k,
                                            double delta, double b,
                                            const AlgorithmConstants& consts,
                                            SampleClamp clamp = SampleClamp::strict);

/// Grows sub-clusters into clusters: for each X_i in order, takes its
/// first g = grow_size_mult * ln n / d^2 members (ascending id) as the
/// reference set, assigns those members directly, and admits every other
/// unclaimed vertex that belong_to_cluster accepts. Claimed vertices are
/// removed before the next round.
Clustering global_grow(FaultyOracle& oracle, const VertexList& V,
                       const std::vector<VertexList>& subclusters,
                       const AlgorithmConstants& consts);

/// Degree cutoff separating sampled members of large clusters from small
/// ones: t/2 - (1/2 - 1/k + (h+1/2) b / k^2) * delta * t.
double gap_degree_threshold(long t, int k, int h, double b, double delta);

/// Known size-gap recovery: samples t = (sample_mult/50) * c0 * k^4 * ln n
/// / (b^2 d^2) vertices, drops every sampled vertex of positive degree
/// below gap_degree_threshold, and partitions the survivors into h groups
/// with balance promise h/(2k). The ambient cluster count k is threaded
/// explicitly because both formulas use it.
std::vector<VertexList> gap_clustering(FaultyOracle& oracle, const VertexList& V, int h, int k,
                                       double delta, double b, const AlgorithmConstants& consts,
                                       SampleClamp clamp = SampleClamp::strict);

/// Probes whether B leans toward one cluster: for up to
/// bias_trials_mult * k * ln n / b rounds, draws a probe uniformly from
/// pool minus B and queries it against all of B; accepts the first time
/// the positive count reaches (1/2 + eta*d/2) |B|. An empty probe pool
/// rejects.
bool test_bias(FaultyOracle& oracle, long ambient_n, const VertexList& B, double eta, double b,
               int k, double delta, const VertexList& pool, const AlgorithmConstants& consts);

struct EnumerateResult {
  int h = 0;
  std::vector<VertexList> seeds;        // X', the bias-tested prefixes
  std::vector<VertexList> subclusters;  // X, the full recovered candidates
  bool whole_pool_sample = false;       // the accepted h sampled all of V
};

/// Tries h = k down to 1 (balanced recovery at h = k, gap recovery
/// below), takes from each candidate X_i its first
/// enum_seed_mult * ln n / (eta^2 d^2) members as X'_i, and returns the
/// first h whose seeds all pass the bias test. Sub-call errors reject
/// that h; nullopt when every h is rejected.
std::optional<EnumerateResult> enumerate_index(FaultyOracle& oracle, const VertexList& V, int k,
                                               double delta, double b, double eta,
                                               const AlgorithmConstants& consts);

/// The end-to-end pipeline with b = eta = 0.1: repeatedly finds accepted
/// seed sets on the unclustered pool and grows them, until the pool drops
/// below stop_size_mult * k^4 * ln n / d^2 or fewer than two clusters
/// remain. Residual vertices are reported unclustered, never merged.
Clustering noisy_clustering(FaultyOracle& oracle, const VertexList& V, int k, double delta,
                            const AlgorithmConstants& consts);

}  // namespace fclust
