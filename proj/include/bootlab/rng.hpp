#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace bootlab {

/// SplitMix64 finalizer. Used to expand seeds and to derive independent
/// streams; never used directly for sampling.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Seed of stream `index` under `master`:
///   splitmix64_mix(master + (index + 1) * 0x9E3779B97F4A7C15).
/// Distinct indices give statistically independent xoshiro states.
constexpr std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64_mix(master + (index + 1) * kGoldenGamma);
}

/// xoshiro256** seeded from a 64-bit value through SplitMix64.
///
/// Every sampling primitive below is defined exactly (no reliance on
/// implementation-defined <random> distributions), so a given seed yields the
/// same draws on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s += kGoldenGamma;
      word = splitmix64_mix(s);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection on the top of the range.
  /// bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Fisher-Yates: for i = size-1 down to 1 swap element i with a uniform
  /// index in [0, i].
  template <class T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace bootlab
