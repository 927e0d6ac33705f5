#pragma once

#include <cstdint>
#include <random>

namespace cellflow {

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/** Deterministic per-index seed stream (episode seeds, per-swimmer seeds). */
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(index));
}

/**
 * Seeded generator with self-contained value mapping.
 *
 * Doubles and bounded ints are derived from raw mt19937_64 words instead of
 * std distributions, so identical seeds give identical streams on every
 * standard library.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /** Uniform double in [0, 1). */
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /** Uniform double in [a, b). */
  double uniform(double a, double b) { return a + uniform() * (b - a); }

  /** Uniform int in [0, n); multiply-shift reduction. */
  int next_int(int n) {
    const auto wide = static_cast<unsigned __int128>(gen_()) * static_cast<unsigned __int128>(n);
    return static_cast<int>(wide >> 64);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cellflow
