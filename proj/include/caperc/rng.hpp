#pragma once

#include <cstdint>
#include <random>

namespace caperc::rng {

// SplitMix64 finalizer. Used as the mixing step of the seed-derivation
// scheme; child streams are keyed by (seed, path...) and do not depend
// on the order in which they are created.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derive a child seed from a master seed and a counter. derive(s, a) and
// derive(s, b) are independent streams for a != b.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(seed ^ splitmix64(counter));
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive(derive(seed, a), b);
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

}  // namespace caperc::rng
