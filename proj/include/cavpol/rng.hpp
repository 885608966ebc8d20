#pragma once

// Deterministic random number streams. Seeds are expanded through splitmix64
// so that derived streams (chain index, batch index) are decorrelated, and
// uniform doubles are produced by explicit bit manipulation rather than
// std::uniform_real_distribution, whose output is implementation-defined.

#include <cstdint>
#include <random>

namespace cavpol::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a child seed from (seed, stream_index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= 0x100000001b3ULL * (stream + 1);
    return a ^ splitmix64(s);
}

class Stream {
public:
    explicit Stream(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(derive_seed(seed, stream)) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [-1, 1).
    double symmetric() { return 2.0 * uniform() - 1.0; }

    std::uint64_t bits() { return engine_(); }

    // Standard normal (Box-Muller, no cached spare: keeps the stream layout
    // independent of call history).
    double normal() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace cavpol::rng
