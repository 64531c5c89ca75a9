#pragma once

#include <cstdint>
#include <limits>

namespace wwrank {

/// SplitMix64 finalizer (Stafford variant 13). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based 64-bit generator: the k-th output is mix64(key + k * gamma).
/// Any output can be recomputed from (key, k) alone, so streams are cheap to
/// derive and never share hidden state. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

  constexpr result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGamma); }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  constexpr std::uint64_t counter() const noexcept { return counter_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Seed of the stream for replicate `index` under `master`:
///   mix64(mix64(master) ^ mix64(index + gamma)).
/// Depends only on (master, index), so replicate results do not depend on
/// which thread ran them or in what order.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + SplitMix64::kGamma));
}

}  // namespace wwrank
