#include "fclust/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fclust/signed_graph.hpp"
#include "fclust/spectral.hpp"

namespace fclust {

namespace {

constexpr double kPipelineBalance = 0.1;  // b and eta fixed by the pipeline
constexpr double kPipelineEta = 0.1;

VertexList sorted_copy(VertexList v) {
  std::sort(v.begin(), v.end());
  return v;
}

// First `count` members in ascending vertex id (all of them if fewer).
VertexList ascending_prefix(const VertexList& members, long count) {
  VertexList sorted = sorted_copy(members);
  if (static_cast<long>(sorted.size()) > count)
    sorted.resize(static_cast<std::size_t>(count));
  return sorted;
}

std::vector<VertexList> positions_to_ids(const SignedSubgraph& graph,
                                         const std::vector<std::vector<Eigen::Index>>& clusters) {
  std::vector<VertexList> out;
  out.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    VertexList ids;
    ids.reserve(cluster.size());
    for (Eigen::Index pos : cluster) ids.push_back(graph.vertex(pos));
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  return out;
}

long resolve_sample_size(long required, long pool, SampleClamp clamp, const char* who) {
  long t = required;
  if (t > pool) {
    if (clamp == SampleClamp::strict)
      throw InsufficientVerticesError(std::string(who) +
                                      ": pool smaller than required sample size");
    t = pool;
  }
  return std::max<long>(t, std::min<long>(pool, 2));
}

}  // namespace

long Clustering::clustered_count() const {
  long total = 0;
  for (const auto& c : clusters) total += static_cast<long>(c.members.size());
  return total;
}

bool belong_to_cluster(FaultyOracle& oracle, VertexId v, const VertexList& B) {
  if (B.empty()) throw DomainError("belong_to_cluster: empty reference set");
  if (std::find(B.begin(), B.end(), v) != B.end())
    throw DomainError("belong_to_cluster: v belongs to the reference set");
  long positives = 0;
  for (VertexId w : B)
    if (oracle.query(v, w) > 0) ++positives;
  return 2 * positives >= static_cast<long>(B.size());
}

std::vector<VertexList> balanced_clustering(FaultyOracle& oracle, const VertexList& V, int k,
                                            double delta, double b,
                                            const AlgorithmConstants& consts, SampleClamp clamp) {
  if (k < 1) throw DomainError("balanced_clustering: k must be positive");
  if (b <= 0.0 || b > 1.0) throw DomainError("balanced_clustering: b must lie in (0,1]");
  const long n = static_cast<long>(V.size());
  long t = resolve_sample_size(consts.balanced_sample_size(n, k, b, delta), n, clamp,
                               "balanced_clustering");
  t = std::max<long>(t, std::min<long>(n, k));
  if (t < k) throw DomainError("balanced_clustering: pool smaller than k");

  SplitMix64 rng = oracle.derive_rng();
  const VertexList sample = sample_without_replacement(V, static_cast<std::size_t>(t), rng);
  const SignedSubgraph graph = build_query_graph(oracle, sample);
  const PartitionResult parts = bal_partition(graph, k, delta, b / 2.0);
  return positions_to_ids(graph, parts.clusters);
}

Clustering global_grow(FaultyOracle& oracle, const VertexList& V,
                       const std::vector<VertexList>& subclusters,
                       const AlgorithmConstants& consts) {
  const long n = static_cast<long>(V.size());
  const long g = consts.grow_reference_size(n, oracle.delta());

  std::vector<VertexList> seeds;
  seeds.reserve(subclusters.size());
  for (const VertexList& x : subclusters) {
    if (static_cast<long>(x.size()) < g)
      throw DomainError("global_grow: sub-cluster smaller than the grow reference size");
    seeds.push_back(ascending_prefix(x, g));
  }

  Clustering result;
  std::unordered_set<VertexId> pool(V.begin(), V.end());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const VertexList& seed = seeds[i];
    std::unordered_set<VertexId> seed_set(seed.begin(), seed.end());
    VertexList members;
    for (VertexId v : seed)
      if (pool.count(v)) members.push_back(v);
    for (VertexId v : sorted_copy(VertexList(pool.begin(), pool.end()))) {
      if (seed_set.count(v)) continue;
      if (belong_to_cluster(oracle, v, seed)) members.push_back(v);
    }
    for (VertexId v : members) pool.erase(v);
    if (!members.empty()) {
      std::sort(members.begin(), members.end());
      result.clusters.push_back({static_cast<int>(result.clusters.size()) + 1,
                                 std::move(members)});
    }
  }
  result.unclustered = sorted_copy(VertexList(pool.begin(), pool.end()));
  return result;
}

double gap_degree_threshold(long t, int k, int h, double b, double delta) {
  const double td = static_cast<double>(t);
  const double kd = static_cast<double>(k);
  return td / 2.0 - (0.5 - 1.0 / kd + (h + 0.5) * b / (kd * kd)) * delta * td;
}

std::vector<VertexList> gap_clustering(FaultyOracle& oracle, const VertexList& V, int h, int k,
                                       double delta, double b, const AlgorithmConstants& consts,
                                       SampleClamp clamp) {
  if (h < 1 || h >= k) throw DomainError("gap_clustering: need 1 <= h <= k-1");
  const long n = static_cast<long>(V.size());
  const long t =
      resolve_sample_size(consts.gap_sample_size(n, k, b, delta), n, clamp, "gap_clustering");

  SplitMix64 rng = oracle.derive_rng();
  const VertexList sample = sample_without_replacement(V, static_cast<std::size_t>(t), rng);
  const SignedSubgraph graph = build_query_graph(oracle, sample);

  const SignedSubgraph survivors =
      filter_by_degree(graph, gap_degree_threshold(t, k, h, b, delta));
  if (survivors.size() < h)
    throw DegenerateFilterError("gap_clustering: degree filter left fewer vertices than h");

  const double b_survivor = static_cast<double>(h) / (2.0 * static_cast<double>(k));
  const PartitionResult parts = bal_partition(survivors, h, delta, b_survivor);
  return positions_to_ids(survivors, parts.clusters);
}

bool test_bias(FaultyOracle& oracle, long ambient_n, const VertexList& B, double eta, double b,
               int k, double delta, const VertexList& pool, const AlgorithmConstants& consts) {
  if (B.empty()) throw DomainError("test_bias: empty candidate set");

  std::unordered_set<VertexId> members(B.begin(), B.end());
  VertexList probes;
  probes.reserve(pool.size());
  for (VertexId v : pool)
    if (!members.count(v)) probes.push_back(v);
  if (probes.empty()) return false;  // nothing left to probe with

  const long rounds = consts.bias_trials(ambient_n, k, b);
  const double accept_at = (0.5 + 0.5 * eta * delta) * static_cast<double>(B.size());

  SplitMix64 rng = oracle.derive_rng();
  for (long r = 0; r < rounds; ++r) {
    const VertexId probe =
        probes[static_cast<std::size_t>(uniform_below(rng, probes.size()))];
    long positives = 0;
    for (VertexId w : B)
      if (oracle.query(probe, w) > 0) ++positives;
    if (static_cast<double>(positives) >= accept_at - 1e-9) return true;
  }
  return false;
}

std::optional<EnumerateResult> enumerate_index(FaultyOracle& oracle, const VertexList& V, int k,
                                               double delta, double b, double eta,
                                               const AlgorithmConstants& consts) {
  if (k < 1) throw DomainError("enumerate_index: k must be positive");
  const long n = static_cast<long>(V.size());
  const long seed_size = consts.enum_seed_size(n, eta, delta);

  for (int h = k; h >= 1; --h) {
    std::vector<VertexList> candidates;
    long required;
    try {
      if (h == k) {
        required = consts.balanced_sample_size(n, h, b, delta);
        candidates = balanced_clustering(oracle, V, h, delta, b, consts, SampleClamp::whole_pool);
      } else {
        required = consts.gap_sample_size(n, k, b, delta);
        candidates = gap_clustering(oracle, V, h, k, delta, b, consts, SampleClamp::whole_pool);
      }
    } catch (const Error&) {
      continue;  // a failed sub-call rejects this h, not the whole search
    }

    std::vector<VertexList> seeds;
    seeds.reserve(candidates.size());
    for (const VertexList& x : candidates) seeds.push_back(ascending_prefix(x, seed_size));

    bool all_biased = true;
    for (const VertexList& seed : seeds) {
      if (!test_bias(oracle, n, seed, eta, b, k, delta, V, consts)) {
        all_biased = false;
        break;
      }
    }
    if (all_biased)
      return EnumerateResult{h, std::move(seeds), std::move(candidates), required >= n};
  }
  return std::nullopt;
}

Clustering noisy_clustering(FaultyOracle& oracle, const VertexList& V, int k, double delta,
                            const AlgorithmConstants& consts) {
  if (k < 1) throw DomainError("noisy_clustering: k must be positive");
  if (!(delta > 0.0) || delta > 1.0)
    throw DomainError("noisy_clustering: delta must lie in (0, 1]");

  const long n0 = static_cast<long>(V.size());
  const long floor_size = consts.stop_floor(n0, k, delta);

  Clustering result;
  VertexList pool = sorted_copy(V);
  int remaining = k;

  while (static_cast<long>(pool.size()) >= floor_size && remaining >= 2) {
    std::optional<EnumerateResult> found =
        enumerate_index(oracle, pool, remaining, delta, kPipelineBalance, kPipelineEta, consts);
    if (!found) {
      result.partial = true;
      break;
    }

    // When the accepted index consumed the entire pool at h == k_c, the
    // recovered sets already partition the pool; re-testing their members
    // against a small seed prefix would only add noise, so they are
    // claimed directly. Otherwise every unclaimed vertex outside the seed
    // is classified by majority vote.
    const bool claim_directly = found->whole_pool_sample && found->h == remaining;

    std::unordered_set<VertexId> in_pool(pool.begin(), pool.end());
    for (int i = 0; i < found->h; ++i) {
      const VertexList& seed = found->seeds[static_cast<std::size_t>(i)];
      VertexList members;
      std::unordered_set<VertexId> direct(seed.begin(), seed.end());
      if (claim_directly) {
        const VertexList& whole = found->subclusters[static_cast<std::size_t>(i)];
        direct.insert(whole.begin(), whole.end());
      }
      for (VertexId v : pool) {
        if (!in_pool.count(v)) continue;
        if (direct.count(v))
          members.push_back(v);
        else if (!claim_directly && belong_to_cluster(oracle, v, seed))
          members.push_back(v);
      }
      for (VertexId v : members) in_pool.erase(v);
      if (!members.empty())
        result.clusters.push_back({static_cast<int>(result.clusters.size()) + 1,
                                   std::move(members)});
    }

    VertexList next_pool;
    next_pool.reserve(in_pool.size());
    for (VertexId v : pool)
      if (in_pool.count(v)) next_pool.push_back(v);
    pool = std::move(next_pool);
    remaining -= found->h;
  }

  // The analysis loop never emits the last cluster; when exactly one
  // remains and the pool is still above the floor, it is that cluster.
  if (!result.partial && remaining == 1 && static_cast<long>(pool.size()) >= floor_size) {
    result.clusters.push_back({static_cast<int>(result.clusters.size()) + 1, pool});
    pool.clear();
  }

  result.unclustered = std::move(pool);
  return result;
}

}  // namespace fclust
