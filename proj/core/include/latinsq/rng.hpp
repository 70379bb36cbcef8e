#pragma once

#include <cstdint>
#include <random>

namespace latinsq {

/// Default master seed used by every randomized entry point.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// splitmix64 finalizer; also the documented stream-seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of logical stream `stream` under a master seed. Streams are what
/// make sampling deterministic regardless of the worker count: stream k is
/// always responsible for sample k.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master ^ mix64(stream + 1));
}

/// mt19937_64 with portable bounded draws (the standard distributions are
/// implementation-defined, which would break bit-reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Unbiased integer in [0, bound) via rejection.
  std::uint32_t below(std::uint32_t bound) {
    const std::uint64_t threshold = (0 - std::uint64_t(bound)) % bound;
    for (;;) {
      const std::uint64_t r = eng_();
      if (r >= threshold) return std::uint32_t(r % bound);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace latinsq
