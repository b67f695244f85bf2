#include "fclust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

namespace fclust {

namespace {

constexpr std::uint64_t kNoiseTag = 0x6f7261636c65ULL;  // noise PRF domain
constexpr std::uint64_t kDrawTag = 0x64726177ULL;       // sampling-stream domain

// Bitset backend cap: 2^28 bits = 32 MB, good through n ~ 23k.
constexpr std::uint64_t kBitsetCapBits = 1ULL << 28;

}  // namespace

// ---------------------------------------------------------------------------
// GroundTruth
// ---------------------------------------------------------------------------

GroundTruth::GroundTruth(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("GroundTruth: empty label sequence");
  k_ = *std::max_element(labels_.begin(), labels_.end());
  if (k_ < 1) throw DomainError("GroundTruth: labels must be positive");
  std::vector<long> counts(static_cast<std::size_t>(k_), 0);
  for (int lab : labels_) {
    if (lab < 1 || lab > k_) throw DomainError("GroundTruth: label out of range");
    ++counts[static_cast<std::size_t>(lab - 1)];
  }
  for (long c : counts)
    if (c == 0) throw DomainError("GroundTruth: every cluster index must be used");
}

int GroundTruth::label(VertexId v) const {
  if (v < 1 || v > n()) throw DomainError("GroundTruth: vertex out of range");
  return labels_[static_cast<std::size_t>(v - 1)];
}

std::vector<long> GroundTruth::cluster_sizes() const {
  std::vector<long> sizes(static_cast<std::size_t>(k_), 0);
  for (int lab : labels_) ++sizes[static_cast<std::size_t>(lab - 1)];
  return sizes;
}

GroundTruth GroundTruth::read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("instance file: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("k") || !j.contains("labels"))
    throw DomainError("instance file: need fields n, k, labels");
  std::vector<int> labels = j.at("labels").get<std::vector<int>>();
  GroundTruth truth(std::move(labels));
  if (truth.n() != j.at("n").get<long>() || truth.k() != j.at("k").get<int>())
    throw DomainError("instance file: n/k fields disagree with labels");
  return truth;
}

GroundTruth GroundTruth::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open instance file: " + path);
  return read_json(in);
}

void GroundTruth::write_json(std::ostream& out) const {
  nlohmann::json j;
  j["n"] = n();
  j["k"] = k();
  j["labels"] = labels_;
  out << j.dump() << "\n";
}

void GroundTruth::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write instance file: " + path);
  write_json(out);
}

int tau(const GroundTruth& truth, VertexId u, VertexId v) {
  if (u == v) throw DomainError("tau: u == v");
  return truth.label(u) == truth.label(v) ? +1 : -1;
}

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

namespace {

GroundTruth labels_from_sizes(const std::vector<long>& sizes, std::uint64_t seed) {
  long n = std::accumulate(sizes.begin(), sizes.end(), 0L);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < sizes.size(); ++i)
    labels.insert(labels.end(), static_cast<std::size_t>(sizes[i]), static_cast<int>(i + 1));
  SplitMix64 rng(mix64(seed ^ 0x696e7374ULL));
  shuffle(labels, rng);
  return GroundTruth(std::move(labels));
}

void require_positive_nk(long n, int k, const char* what) {
  if (n < 1 || k < 1) throw InfeasibleSpecError(std::string(what) + ": n and k must be positive");
  if (k > n) throw InfeasibleSpecError(std::string(what) + ": k exceeds n");
}

std::vector<long> balanced_sizes(long n, int k) {
  std::vector<long> sizes(static_cast<std::size_t>(k), n / k);
  for (long i = 0; i < n % k; ++i) ++sizes[static_cast<std::size_t>(i)];
  return sizes;
}

// Smallest integer >= x and largest integer < x, robust to x being integral.
long ceil_long(double x) { return static_cast<long>(std::ceil(x - 1e-12)); }
long below_long(double x) {
  long f = static_cast<long>(std::floor(x));
  return (static_cast<double>(f) >= x) ? f - 1 : f;
}

std::vector<long> bbalanced_sizes(long n, int k, double b, std::uint64_t seed) {
  if (b <= 0.0 || b > 1.0) throw InfeasibleSpecError("BBalanced: b must lie in (0,1]");
  const long floor_size = std::max<long>(1, ceil_long(b * static_cast<double>(n) / k));
  if (floor_size * k > n)
    throw InfeasibleSpecError("BBalanced: floor ceil(b*n/k) times k exceeds n");
  std::vector<long> sizes(static_cast<std::size_t>(k), floor_size);
  SplitMix64 rng(mix64(seed ^ 0x6262616cULL));
  for (long extra = n - floor_size * k; extra > 0; --extra)
    ++sizes[static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(k)))];
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

std::vector<long> gap_sizes(long n, int k, int h, double b, std::uint64_t seed) {
  if (h < 1 || h >= k) throw InfeasibleSpecError("GapShaped: need 1 <= h <= k-1");
  if (b <= 0.0 || b > 0.5) throw InfeasibleSpecError("GapShaped: b must lie in (0, 1/2]");
  const double nk = static_cast<double>(n) / k;
  // Small clusters sit strictly below b*n/k (so the instance is unbalanced
  // and below every gap threshold); large ones sit at or above n/k.
  const long small_max = below_long(b * nk);
  if (small_max < 1) throw InfeasibleSpecError("GapShaped: b*n/k leaves no room for small clusters");
  const long large_min = ceil_long(nk);

  SplitMix64 rng(mix64(seed ^ 0x676170ULL));
  std::vector<long> sizes(static_cast<std::size_t>(k), 0);
  long used = 0;
  for (int i = h; i < k; ++i) {
    long s = 1 + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(small_max)));
    sizes[static_cast<std::size_t>(i)] = s;
    used += s;
  }
  const long large_total = n - used;
  if (large_total < static_cast<long>(h) * large_min)
    throw InfeasibleSpecError("GapShaped: large clusters cannot all reach n/k");
  for (int i = 0; i < h; ++i) sizes[static_cast<std::size_t>(i)] = large_min;
  for (long extra = large_total - static_cast<long>(h) * large_min; extra > 0; --extra)
    ++sizes[static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(h)))];

  std::sort(sizes.begin(), sizes.begin() + h, std::greater<>());
  std::sort(sizes.begin() + h, sizes.end(), std::greater<>());
  return sizes;
}

}  // namespace

GroundTruth sample_instance(const InstanceSpec& spec, std::uint64_t seed) {
  return std::visit(
      [&](const auto& s) -> GroundTruth {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExactSizes>) {
          if (s.sizes.empty()) throw InfeasibleSpecError("ExactSizes: no sizes given");
          for (long sz : s.sizes)
            if (sz < 1) throw InfeasibleSpecError("ExactSizes: sizes must be positive");
          return labels_from_sizes(s.sizes, seed);
        } else if constexpr (std::is_same_v<T, Balanced>) {
          require_positive_nk(s.n, s.k, "Balanced");
          return labels_from_sizes(balanced_sizes(s.n, s.k), seed);
        } else if constexpr (std::is_same_v<T, BBalanced>) {
          require_positive_nk(s.n, s.k, "BBalanced");
          return labels_from_sizes(bbalanced_sizes(s.n, s.k, s.b, seed), seed);
        } else {
          require_positive_nk(s.n, s.k, "GapShaped");
          return labels_from_sizes(gap_sizes(s.n, s.k, s.h, s.b, seed), seed);
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// FaultyOracle
// ---------------------------------------------------------------------------

FaultyOracle::FaultyOracle(GroundTruth truth, double delta, std::uint64_t seed)
    : truth_(std::make_shared<GroundTruth>(std::move(truth))), delta_(delta), seed_(seed) {
  if (!(delta_ > 0.0) || delta_ > 1.0)
    throw DomainError("FaultyOracle: delta must lie in (0, 1]");
  const std::uint64_t n = static_cast<std::uint64_t>(truth_->n());
  const std::uint64_t pairs = n * (n - 1) / 2;
  use_bitset_ = pairs <= kBitsetCapBits;
  if (use_bitset_) seen_bits_.assign(static_cast<std::size_t>((pairs + 63) / 64), 0);
}

std::uint64_t FaultyOracle::pair_index(VertexId u, VertexId v) const {
  // Canonical index of the unordered pair {u,v}, 0-based row-major over
  // the strict upper triangle.
  const std::uint64_t n = static_cast<std::uint64_t>(truth_->n());
  const std::uint64_t a = static_cast<std::uint64_t>(std::min(u, v));
  const std::uint64_t b = static_cast<std::uint64_t>(std::max(u, v));
  return (a - 1) * n - a * (a + 1) / 2 + b - 1;
}

int FaultyOracle::answer(VertexId u, VertexId v) const {
  const int truth_sign = tau(*truth_, u, v);
  const std::uint64_t a = static_cast<std::uint64_t>(std::min(u, v));
  const std::uint64_t b = static_cast<std::uint64_t>(std::max(u, v));
  const double coin = to_unit_interval(prf64(seed_ ^ kNoiseTag, a, b));
  const int noise_sign = (coin < 0.5 + 0.5 * delta_) ? +1 : -1;
  return truth_sign * noise_sign;
}

int FaultyOracle::query(VertexId u, VertexId v) {
  const int sign = answer(u, v);  // validates u, v
  ++stats_.total_calls;
  const std::uint64_t idx = pair_index(u, v);
  if (use_bitset_) {
    std::uint64_t& word = seen_bits_[static_cast<std::size_t>(idx >> 6)];
    const std::uint64_t bit = 1ULL << (idx & 63);
    if (!(word & bit)) {
      word |= bit;
      ++stats_.distinct_pairs;
    }
  } else {
    if (seen_set_.insert(idx).second) ++stats_.distinct_pairs;
  }
  return sign;
}

SplitMix64 FaultyOracle::derive_rng() {
  return SplitMix64(prf64(seed_ ^ kDrawTag, ++draw_counter_, 0));
}

VertexList FaultyOracle::all_vertices() const {
  VertexList ids(static_cast<std::size_t>(truth_->n()));
  std::iota(ids.begin(), ids.end(), 1);
  return ids;
}

}  // namespace fclust
