#pragma once

#include <cstdint>

namespace preslab {

// Counter-based generator: every draw is a pure function of (seed, index),
// so parallel sampling is reproducible independent of thread count.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// Uniform draw in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(counter_bits(seed, index) >> 11) * 0x1.0p-53;
}

}  // namespace preslab
