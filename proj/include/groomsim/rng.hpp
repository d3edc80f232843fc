#pragma once

#include <cstdint>
#include <random>

namespace groomsim {

// SplitMix64 step, used to derive independent stream seeds from one master
// seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed for stream `id` under `master`. Stream seeds are stable: adding or
// removing other streams never changes the draws of an existing one.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t id) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ull * (id + 1));
  splitmix64(s);
  return splitmix64(s);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  return derive_seed(derive_seed(master, a), b);
}

// Uniform double in [0, 1) from the top 53 bits of the engine output.
// std::uniform_real_distribution is not pinned by the standard; this mapping
// is bit-stable across toolchains.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace groomsim
