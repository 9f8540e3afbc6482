#pragma once

#include <cstdint>
#include <random>

namespace rank1kit {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent generator for sample `stream` of a seeded batch. Results do not
/// depend on which thread draws the stream.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 1)));
}

}  // namespace rank1kit
