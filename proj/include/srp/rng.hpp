#pragma once

#include <cstdint>
#include <random>

namespace srp {

// splitmix64 step; used to derive independent substream seeds from one base
// seed (per instance, per restart, ...) in a platform-independent way.
inline uint64_t mix_seed(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) { return mix_seed(a ^ mix_seed(b)); }
inline uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c) { return mix_seed(mix_seed(a, b), c); }

// Uniform draw from [0, n) via 128-bit multiply-shift. Unlike
// std::uniform_int_distribution, the output sequence is pinned by the
// standard-mandated mt19937_64 stream alone, so seeds reproduce everywhere.
inline uint64_t bounded(std::mt19937_64& rng, uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace srp
