// Deterministic sub-seed derivation and portable uniform doubles, shared by
// the Monte Carlo and synthesis code. Keeping these independent of the
// standard library's distribution internals makes seeded outputs stable
// across toolchains.
#pragma once

#include <cstdint>
#include <random>

namespace pedalmap::detail {

// splitmix64 finalizer: decorrelates (seed, index) pairs into fresh seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) from the top 53 bits of the engine's output.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Standard normal via Box-Muller on portable uniforms (polar form avoided to
// keep the draw count per call fixed at two).
inline double normal01(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace pedalmap::detail
