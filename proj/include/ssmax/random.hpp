#pragma once

#include <cstdint>
#include <random>

namespace ssmax {

/// The engine's random stream. mt19937_64 output is fully specified by the
/// standard, so seeded runs reproduce across platforms as long as we avoid the
/// implementation-defined std distributions (see uniform_below).
using Rng = std::mt19937_64;

/// Uniform draw from [0, bound) by rejection; bound must be nonzero.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    return draw % bound;
}

inline bool coin_flip(Rng& rng) { return (rng() >> 63) != 0; }

/// SplitMix64 finalizer, used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace ssmax
