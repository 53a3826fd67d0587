#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Seeded randomness used across the library. The mt19937_64 engine has a
// standard-mandated output sequence; every transform below is written out
// explicitly so a (seed, index) pair maps to the same draw on any platform.
namespace sentivol::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream for replicate/restart `index` of a run seeded `seed`.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

/// Unbiased draw from [0, n).
inline std::uint64_t below(Engine& eng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r = eng();
    while (r >= limit) r = eng();
    return r % n;
}

/// Uniform on (0, 1].
inline double uniform01(Engine& eng) {
    return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Standard normal via Box-Muller; consumes two draws per call.
inline double gauss(Engine& eng) {
    double u1 = uniform01(eng);
    double u2 = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

/// Fisher-Yates; deterministic for a given engine state.
template <typename T>
void shuffle(std::vector<T>& v, Engine& eng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(below(eng, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace sentivol::rng
