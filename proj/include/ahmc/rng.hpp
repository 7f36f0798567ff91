#pragma once

#include <cstdint>
#include <random>

namespace ahmc::rng {

// One round of splitmix64 (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for substream `stream` of a master seed:
//   derive_seed(seed, stream) = splitmix64(seed + GOLDEN * (stream + 1)).
// The derivation is a pure function of (seed, stream), so adding streams
// (e.g. more chains) never perturbs the streams that already exist.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  return splitmix64(s);
}

inline std::mt19937_64 engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(derive_seed(seed, stream));
}

// Substream ids used within a single chain's seed.
enum Stream : std::uint64_t {
  kChain = 1,  // momentum, trajectory length and accept draws
  kAdapt = 2,  // adaptation coin flips
  kInit = 3,   // starting position
};

}  // namespace ahmc::rng
