// Deterministic 64-bit PRNG for codebook mutation. splitmix64 is used so
// that identically seeded runs reproduce bit-for-bit on any platform.
#pragma once

#include <cstdint>

namespace gsvq {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [-half_width, +half_width).
    double next_offset(double half_width) {
        return (2.0 * next_unit() - 1.0) * half_width;
    }

private:
    std::uint64_t state_;
};

}  // namespace gsvq
