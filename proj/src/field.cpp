#include "elri/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elri/errors.hpp"

namespace elri {

Field::Field(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

Field::Field(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw ConfigError("field has " + std::to_string(values_.size()) +
                          " values but grid has " + std::to_string(grid_.size()));
    }
}

Field Field::from_function(Grid grid, const std::function<double(double)>& f) {
    Field out(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) out.values_[j] = f(grid.point(j));
    return out;
}

Field Field::from_spectrum(Grid grid, std::span<const Complex> spectrum,
                           double* imag_residue) {
    if (spectrum.size() != grid.size()) {
        throw ConfigError("spectrum length does not match grid size");
    }
    const auto samples = fft::inverse(spectrum);
    Field out(grid);
    double worst = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        out.values_[j] = samples[j].real();
        worst = std::max(worst, std::abs(samples[j].imag()));
    }
    if (imag_residue) *imag_residue = worst;
    return out;
}

Spectrum Field::spectrum() const { return fft::forward(values_); }

double Field::mean() const noexcept {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

double Field::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool Field::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return std::isfinite(v); });
}

Field& Field::operator+=(const Field& rhs) {
    if (!(grid_ == rhs.grid_)) throw ConfigError("grid mismatch in field sum");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += rhs.values_[j];
    return *this;
}

Field& Field::operator-=(const Field& rhs) {
    if (!(grid_ == rhs.grid_)) throw ConfigError("grid mismatch in field difference");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= rhs.values_[j];
    return *this;
}

Field& Field::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator*(double s, Field f) { return f *= s; }
Field operator*(Field f, double s) { return f *= s; }

Field multiply(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid())) throw ConfigError("grid mismatch in field product");
    Field out(a.grid());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
    return out;
}

Field square(const Field& a) { return multiply(a, a); }

Field cube(const Field& a) {
    Field out(a.grid());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * a[j] * a[j];
    return out;
}

}  // namespace elri
