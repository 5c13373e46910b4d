#pragma once

// Reproducible per-instance random streams.

#include <cstdint>
#include <random>

namespace freecorr {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent generator for instance i of a batch seeded with seed.
inline std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t i) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(i + 1)));
}

}  // namespace freecorr
