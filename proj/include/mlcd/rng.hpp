#pragma once

#include <cstdint>
#include <random>

namespace mlcd {

// splitmix64 step; used as a mixing function for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive an independent stream seed from a master seed and up to three
/// stream coordinates (grid index, trial, purpose). Collision-resistant
/// enough for simulation use and fully deterministic.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ (a + 0x9e3779b97f4a7c15ULL));
    s = splitmix64(s ^ (b + 0xd1b54a32d192ed03ULL));
    s = splitmix64(s ^ (c + 0x8cb92ba72f3d8dd7ULL));
    return s;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

} // namespace mlcd
