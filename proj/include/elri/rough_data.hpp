#pragma once

#include <cstdint>

#include "elri/field.hpp"

namespace elri {

/// SplitMix64 (Steele, Lea & Flood 2014). State update
///   s += 0x9E3779B97F4A7C15
///   z = s; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
/// Uniform doubles in [0, 1) take the top 53 bits: (z >> 11) * 2^-53.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

struct RoughSpec {
    std::size_t n_points = 1024;
    double theta = 0.0;
    std::uint64_t seed = kDefaultSeed;
};

/// Random initial data of regularity H^theta: N uniform samples on [0, 1],
/// spectral multiplier |xi|^{-theta} (zero at xi = 0), then scaled so the
/// largest absolute grid value is 1.
Field generate_rough(const RoughSpec& spec);

/// Zero-mean trigonometric polynomial with modes 1 <= |xi| <= cutoff whose
/// real and imaginary coefficient parts are uniform on [-1/2, 1/2].
/// Used as test data for the frequency-sum oracles.
Field random_band_limited(const Grid& grid, long cutoff, std::uint64_t seed);

}  // namespace elri
