#pragma once

#include <cstdint>

namespace stegaug {

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/**
 * Counter-based random stream addressed by (seed, index).
 *
 * Each sample of a batch owns the stream for its own index, so draws do not
 * depend on evaluation order or worker count. The generator is part of the
 * on-disk reproducibility contract and any other implementation (for example
 * a language binding) must follow it bit for bit:
 *
 *   key    = mix64(mix64(seed) ^ index)
 *   draw_n = mix64(key + n * 0x9e3779b97f4a7c15)   for n = 1, 2, ...
 *
 * with all arithmetic modulo 2^64 and mix64 the SplitMix64 finalizer.
 * A real in [0, 1) takes the top 53 bits of one draw times 2^-53.
 * An integer in [0, n) rejects draws below (2^64 mod n) and returns the
 * first accepted draw modulo n.
 */
class DecisionStream {
 public:
  constexpr DecisionStream(std::uint64_t seed, std::uint64_t index)
      : key_(mix64(mix64(seed) ^ index)) {}

  constexpr std::uint64_t next() {
    ++counter_;
    return mix64(key_ + counter_ * kGoldenGamma);
  }

  constexpr double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n); n must be positive.
  constexpr std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) {
        return x % n;
      }
    }
  }

  /// Uniform real in [lo, hi).
  constexpr double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  constexpr std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_{0};
};

}  // namespace stegaug
