#pragma once

#include <cstdint>
#include <random>

namespace landscape {

std::uint64_t splitmix64(std::uint64_t x);

/// Mixes `value` into `state` (order-sensitive).
std::uint64_t hash_combine64(std::uint64_t state, std::uint64_t value);

// std::*_distribution output is implementation-defined, so the transforms
// from raw 64-bit draws are spelled out here to keep seeded data portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound), rejection-sampled.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller (second variate discarded).
  double gaussian();

 private:
  std::mt19937_64 engine_;
};

}  // namespace landscape
