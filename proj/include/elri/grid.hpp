#pragma once

#include <cstddef>
#include <numbers>

namespace elri {

/// Uniform discretization of the torus (0, 2*pi) with an even number of
/// samples. Spectral index k maps to wavenumber k for k < N/2 and k - N
/// otherwise, so the band is {-N/2, ..., N/2 - 1}.
class Grid {
public:
    explicit Grid(std::size_t n_points);

    std::size_t size() const noexcept { return n_; }
    static constexpr double length() noexcept { return 2.0 * std::numbers::pi; }

    double point(std::size_t j) const noexcept {
        return length() * static_cast<double>(j) / static_cast<double>(n_);
    }

    long wavenumber(std::size_t k) const noexcept {
        return k < n_ / 2 ? static_cast<long>(k)
                          : static_cast<long>(k) - static_cast<long>(n_);
    }

    /// Spectral index of wavenumber xi; xi must lie in the band.
    std::size_t index(long xi) const noexcept {
        return xi >= 0 ? static_cast<std::size_t>(xi)
                       : static_cast<std::size_t>(xi + static_cast<long>(n_));
    }

    bool in_band(long xi) const noexcept {
        const long half = static_cast<long>(n_ / 2);
        return xi >= -half && xi < half;
    }

    std::size_t nyquist_index() const noexcept { return n_ / 2; }

    bool operator==(const Grid&) const = default;

private:
    std::size_t n_;
};

}  // namespace elri
