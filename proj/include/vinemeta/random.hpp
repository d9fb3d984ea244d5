#pragma once

#include <cstdint>
#include <random>

namespace vinemeta {

/// SplitMix64 finalizer; derives independent stream seeds from (seed, index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Engine = std::mt19937_64;

/// Uniform on the open interval (0, 1) with 53 random bits.
inline double uniform_open(Engine& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace vinemeta
