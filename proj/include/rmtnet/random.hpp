#pragma once

// Seed derivation and uniform draws.
//
// All randomness in the library flows from std::mt19937_64, whose output
// sequence is fixed by the C++ standard. Distributions from <random> are
// avoided for anything that must be bit-reproducible, because their
// algorithms are implementation-defined; uniform doubles are built directly
// from the top 53 bits of the engine output instead.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rmtnet {

using engine = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t finalize64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-member seed: seed XOR (index * golden-ratio odd constant), finalized.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return finalize64(seed ^ (index * 0x9E3779B97F4A7C15ULL));
}

// Folds several indices into one seed, e.g. (run seed, member, L index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
    for (auto idx : path) seed = mix_seed(seed, idx);
    return seed;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(engine& eng) noexcept {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(engine& eng, double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform01(eng);
}

}  // namespace rmtnet
