#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace qtc::detail {

// All randomized behavior in the library flows through these helpers on top
// of mt19937_64. The standard distributions are not pinned across standard
// library implementations, so sampling is spelled out here to keep seeded
// results reproducible everywhere.

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection, avoiding modulo bias. bound >= 1.
inline std::uint64_t bounded_uint(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % bound;
  for (;;) {
    const std::uint64_t r = gen();
    if (r < limit) return r % bound;
  }
}

// Standard normal via Box-Muller. Draws two uniforms per sample; the sine
// half of the pair is discarded to keep call sites stateless.
inline double standard_normal(std::mt19937_64& gen) {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1], keeps the log finite
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace qtc::detail
