#pragma once

#include <cstdint>
#include <random>

namespace ramac {

// 64-bit finalizer (splitmix64). Bijective, good avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Keyed counter PRF: fold each key into the state through the finalizer.
// Per-stage constants keep (a,b) and (b,a) from colliding.
inline std::uint64_t prf(std::uint64_t seed, std::uint64_t a) {
    return mix64(seed ^ (a + 0x9e3779b97f4a7c15ULL));
}
inline std::uint64_t prf(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return mix64(prf(seed, a) ^ (b + 0xd1b54a32d192ed03ULL));
}
inline std::uint64_t prf(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c) {
    return mix64(prf(seed, a, b) ^ (c + 0x8cb92ba72f3d8dd7ULL));
}
inline std::uint64_t prf(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c, std::uint64_t d) {
    return mix64(prf(seed, a, b, c) ^ (d + 0xaef17502108ef2d9ULL));
}

// Map 64 random bits to a double in [0, 1) with 53-bit resolution.
inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Seedable stream for Monte Carlo sampling (channel noise, random test
// instances). Codebook symbols do not use this; they come from the counter
// PRF above so that any symbol is addressable without generating its
// predecessors.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }
    double uniform() { return unit_double(eng_()); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    }

private:
    std::mt19937_64 eng_;
};

} // namespace ramac
