#pragma once

#include <functional>
#include <span>
#include <vector>

#include "elri/fft.hpp"
#include "elri/grid.hpp"

namespace elri {

/// Real-valued function sampled on a Grid. Grid values are the canonical
/// representation; the spectrum is computed on demand with the
/// normalization u_hat(xi) = (1/N) sum_j u(x_j) exp(-i xi x_j).
class Field {
public:
    explicit Field(Grid grid);
    Field(Grid grid, std::vector<double> values);

    static Field from_function(Grid grid, const std::function<double(double)>& f);

    /// Builds a field from spectral coefficients, keeping the real part of
    /// the inverse transform. If imag_residue is non-null it receives the
    /// largest discarded imaginary part.
    static Field from_spectrum(Grid grid, std::span<const Complex> spectrum,
                               double* imag_residue = nullptr);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    double& operator[](std::size_t j) noexcept { return values_[j]; }

    Spectrum spectrum() const;

    /// Grid mean, equal to the mode-0 coefficient.
    double mean() const noexcept;
    double max_abs() const noexcept;
    bool all_finite() const noexcept;

    Field& operator+=(const Field& rhs);
    Field& operator-=(const Field& rhs);
    Field& operator*=(double s) noexcept;

private:
    Grid grid_;
    std::vector<double> values_;
};

Field operator+(Field lhs, const Field& rhs);
Field operator-(Field lhs, const Field& rhs);
Field operator*(double s, Field f);
Field operator*(Field f, double s);

/// Pointwise products on the grid.
Field multiply(const Field& a, const Field& b);
Field square(const Field& a);
Field cube(const Field& a);

}  // namespace elri
