// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 dkb Contributors

#pragma once

#include <cstdint>
#include <random>

namespace dkb {

// All randomized steps draw from std::mt19937_64 directly instead of the
// standard <random> distributions; distribution output is implementation
// defined, the raw engine sequence is not. This keeps artifacts bit-stable
// across compilers for a fixed seed.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Stateless per-index seed derivation (splitmix64 step at `index`).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix64(base + (index + 1) * 0x9E3779B97F4A7C15ull);
}

/// Uniform draw in [0, n). Modulo bias is irrelevant at the sizes used here
/// and the result depends only on the engine sequence.
inline std::uint64_t pick_below(std::mt19937_64& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
inline double pick_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace dkb
