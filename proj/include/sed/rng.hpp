#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter), so parallel consumers get identical values
// regardless of scheduling or worker count.

#include <cstdint>
#include <cmath>

namespace sed::rng {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

// Uniform in [0, 1) with 53 random bits.
inline double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(hash(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes counters 2c and 2c+1.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const double u1 = u01(seed, stream, 2 * counter);
    const double u2 = u01(seed, stream, 2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * M_PI * u2);
}

// Both Box-Muller outputs of the draw pair (2c, 2c+1); normal(s, st, c)
// equals the first component.
inline void normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                        double& first, double& second) {
    const double u1 = u01(seed, stream, 2 * counter);
    const double u2 = u01(seed, stream, 2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    first = r * std::cos(2.0 * M_PI * u2);
    second = r * std::sin(2.0 * M_PI * u2);
}

// Deterministic sub-seed derivation for ensemble members.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return hash(master, 0xC0FFEE5EEDULL, index);
}

}  // namespace sed::rng
