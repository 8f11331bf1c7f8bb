// rng.hpp - Counter-based splittable random source.  Every draw is a pure
// function of (seed, stream, counter), so parallel trials reproduce exactly
// regardless of scheduling.

#pragma once

#include <cstdint>

namespace qmodal {

// SplitMix64-style output function over a keyed counter.  Statistical
// quality is adequate for Monte Carlo frequency estimation; the point here
// is reproducibility, not cryptography.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(mix(seed ^ (stream * 0x9E3779B97F4A7C15ULL + 0x6A09E667F3BCC909ULL))) {}

    std::uint64_t bits(std::uint64_t counter) const noexcept {
        return mix(key_ + counter * 0x9E3779B97F4A7C15ULL);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform(std::uint64_t counter) const noexcept {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
};

} // namespace qmodal
