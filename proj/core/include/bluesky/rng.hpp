#pragma once

#include <cstdint>

namespace bluesky {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, counter), so results do not depend on evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const noexcept {
    std::uint64_t z = mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL)) + counter * 0x9e3779b97f4a7c15ULL;
    return mix(z);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace bluesky
