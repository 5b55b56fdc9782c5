#pragma once

#include <cstdint>

namespace hofa {

__extension__ typedef __int128 int128;
__extension__ typedef unsigned __int128 uint128;

/// Counter-based random source: every draw is a pure function of
/// (seed, sample, lane). Sample i of an estimator uses lanes 0, 1, ... for its
/// coordinates, so any partition of the sample range across workers sees the
/// same numbers.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(std::uint64_t sample, std::uint64_t lane) const {
    std::uint64_t z = mix(sample + 0x9E3779B97F4A7C15ULL * (lane + 1));
    return mix(seed_ ^ z ^ (lane << 32 | lane >> 32));
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t sample, std::uint64_t lane) const {
    return static_cast<double>(bits(sample, lane) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound, std::uint64_t sample, std::uint64_t lane) const {
    // Multiply-shift reduction; the bias is below 2^-44 for bound <= 2^20.
    const uint128 wide = static_cast<uint128>(bits(sample, lane)) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace hofa
