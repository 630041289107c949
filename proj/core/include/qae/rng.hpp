#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qae {

// Uniform double in [0, 1) from the top 53 bits of a mt19937_64 draw.
// std::uniform_real_distribution is implementation-defined, which would
// break cross-library reproducibility of seeded runs.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Box-Muller; one normal per call, deterministic across platforms.
inline double normal01(std::mt19937_64& rng) {
  double u1 = 1.0 - uniform01(rng);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// splitmix64 finalizer; derives independent per-restart seeds from a base
// seed so parallel restarts stay reproducible regardless of scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qae
