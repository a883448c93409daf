#pragma once

#include <cstdint>

namespace cvstab {

// Deterministic, platform-independent PRNG (splitmix64). Reports that embed
// a seed must reproduce byte-identically, so std::uniform_int_distribution
// (implementation-defined) is avoided.
struct SplitMix64 {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;

    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n) (Lemire's method).
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t x = next();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
        std::uint64_t l = static_cast<std::uint64_t>(m);
        if (l < n) {
            std::uint64_t t = -n % n;
            while (l < t) {
                x = next();
                m = static_cast<unsigned __int128>(x) * n;
                l = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    double uniform01() { return (next() >> 11) * 0x1.0p-53; }

    // Independent stream for shot i (seed-split sampling).
    static SplitMix64 split(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 g(seed ^ (0xd1342543de82ef95ull * (stream + 1)));
        g.next();
        return g;
    }
};

}  // namespace cvstab
