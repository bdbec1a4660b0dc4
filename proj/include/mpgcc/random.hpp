#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mpgcc {

/// Seeded engine used everywhere randomness appears.
using Rng = std::mt19937_64;

/// Uniform in [0, 1) from the top 53 bits; identical across standard libraries,
/// unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Uniform integer in [0, n).
inline int uniform_index(Rng& rng, int n) { return static_cast<int>(uniform01(rng) * n); }

/// Exp(1) draw, for Dirichlet weights.
inline double exponential(Rng& rng) { return -std::log1p(-uniform01(rng)); }

}  // namespace mpgcc
