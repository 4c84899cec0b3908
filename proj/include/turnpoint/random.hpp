#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace turnpoint {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_key(std::uint64_t state, std::uint64_t key) noexcept {
    return splitmix64(state ^ (key + 0x9e3779b97f4a7c15ULL + (state << 6) + (state >> 2)));
}

}  // namespace detail

// Deterministic uniform/exponential source. Draws depend only on the seed:
// the engine output is bit-specified and the variates are derived by inverse
// CDF, so identical seeds give identical streams on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // Stream for one cell of a keyed study, e.g. (seed, bandwidth, replicate).
    // Distinct key tuples yield independent streams, so replicates can run in
    // any order or in parallel without changing their draws.
    static RandomStream keyed(std::uint64_t seed, std::uint64_t key1, std::uint64_t key2) {
        return RandomStream(detail::mix_key(detail::mix_key(detail::splitmix64(seed), key1), key2));
    }

    double uniform() {  // in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

private:
    std::mt19937_64 engine_;
};

}  // namespace turnpoint
