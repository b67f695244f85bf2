#pragma once

#include <cstdint>
#include <vector>

#include "fclust/errors.hpp"

// Deterministic random primitives. Everything downstream (oracle answers,
// sample draws, instance shuffles) must reproduce bit-exactly across
// platforms and standard-library versions, so we do not use std::shuffle
// or std::uniform_int_distribution, whose outputs are unspecified.

namespace fclust {

/// Finalizer of the splitmix64 generator; also a decent 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Keyed pseudo-random function: hashes a (key, a, b) triple into 64
/// uniform bits. Used for persistent oracle noise.
constexpr std::uint64_t prf64(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(key) ^ a) ^ b);
}

/// Maps 64 random bits to a double in [0, 1).
constexpr double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// splitmix64 stream; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  double unit() { return to_unit_interval((*this)()); }

 private:
  std::uint64_t state_;
};

/// Uniform integer in [0, bound) by rejection; unbiased for any bound.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
  if (bound == 0) throw DomainError("uniform_below: bound must be positive");
  const std::uint64_t limit = ~0ULL - ~0ULL % bound;
  std::uint64_t bits;
  do {
    bits = rng();
  } while (bits >= limit);
  return bits % bound;
}

/// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Uniform sample of `count` items without replacement, in draw order.
template <typename T>
std::vector<T> sample_without_replacement(const std::vector<T>& pool, std::size_t count,
                                          SplitMix64& rng) {
  if (count > pool.size())
    throw DomainError("sample_without_replacement: count exceeds pool size");
  std::vector<T> scratch = pool;
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, scratch.size() - i));
    std::swap(scratch[i], scratch[j]);
    out.push_back(scratch[i]);
  }
  return out;
}

}  // namespace fclust
