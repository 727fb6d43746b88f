#pragma once

// Project-wide random source: std::mt19937_64 (MT19937-64, default-seeded
// via its one-argument constructor). The standard distributions are
// implementation-defined, so the two derived draws are spelled out here:
//
//   uniform01()      = (next() >> 11) * 2^-53            in [0, 1)
//   uniform_index(n) = next() % n, rejecting draws >= 2^64 - (2^64 mod n)
//
// Any MT19937-64 implementation that follows these rules reproduces a run.

#include <cstdint>
#include <limits>
#include <random>

namespace evosum {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    for (;;) {
      const std::uint64_t x = next();
      if (x <= limit) return x % n;
    }
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent seeds from one base seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(index));
}

}  // namespace evosum
