#pragma once

#include <cstdint>
#include <random>

namespace codecap {

/// Engine choice is part of the output contract: mt19937_64 is fully specified
/// by the standard, so equal seeds give equal streams on every platform.
using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream seed for the index-th independent sub-task of a master-seeded run.
/// Trials keyed this way can be reordered or parallelized without changing
/// any individual trial's outcome.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

/// Uniform double in [0, 1) with 53 random bits; avoids the
/// implementation-defined behavior of std::uniform_real_distribution.
inline double uniform01(Engine& e) {
  return static_cast<double>(e() >> 11) * 0x1.0p-53;
}

}  // namespace codecap
