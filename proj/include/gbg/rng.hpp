#pragma once

#include <cstdint>
#include <numbers>
#include <random>

namespace gbg {

/// Independent generator for (seed, stream), e.g. one per ascent restart.
/// Only the engine's raw output is used, so sequences are identical across
/// standard libraries.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline double uniform_angle(std::mt19937_64& g) { return 2.0 * std::numbers::pi * uniform01(g); }

inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) { return g() % n; }

inline int random_sign(std::mt19937_64& g) { return (g() >> 63) ? -1 : 1; }

}  // namespace gbg
