#include "elri/spectral.hpp"

#include <cmath>
#include <numbers>
#include <memory>
#include <vector>

namespace elri::spectral {
namespace {

// exp(i * t * xi^3) with the phase reduced in extended precision; xi^3
// reaches 5e11 at N = 2^14.
Complex cubic_phase(double t, long xi) {
    const long double cube = static_cast<long double>(xi) * xi * xi;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const long double phase = std::fmod(static_cast<long double>(t) * cube, two_pi);
    return std::polar(1.0, static_cast<double>(phase));
}

// Phase tables for recently used (N, t); steppers reuse a handful of times.
std::shared_ptr<const std::vector<Complex>> airy_table(const Grid& g, double t) {
    struct Entry {
        std::size_t n;
        double t;
        std::shared_ptr<const std::vector<Complex>> table;
    };
    thread_local std::vector<Entry> cache;
    for (const auto& e : cache) {
        if (e.n == g.size() && e.t == t) return e.table;
    }
    if (cache.size() >= 8) cache.erase(cache.begin());
    auto table = std::make_shared<std::vector<Complex>>(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        (*table)[k] = k == g.nyquist_index() ? Complex(1.0) : cubic_phase(t, g.wavenumber(k));
    }
    cache.push_back({g.size(), t, table});
    return table;
}

}  // namespace

Field apply_symbol(const Field& f, const Symbol& symbol, Complex nyquist_factor) {
    const Grid& g = f.grid();
    Spectrum s = f.spectrum();
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k == g.nyquist_index()) {
            s[k] *= nyquist_factor;
        } else {
            s[k] *= symbol(g.wavenumber(k));
        }
    }
    return Field::from_spectrum(g, s);
}

Spectrum to_spectrum(const Field& f) { return f.spectrum(); }

Field inv_dx(const Field& f) {
    const auto table = inv_dx_symbol(f.grid());
    Spectrum s = f.spectrum();
    for (std::size_t k = 0; k < s.size(); ++k) s[k] *= table[k];
    return Field::from_spectrum(f.grid(), s);
}

Field dx(const Field& f, unsigned k) {
    if (k == 0) return f;
    const Complex nyq = (k % 2 == 1) ? Complex(0.0)
                                     : Complex(std::pow(-1.0, k / 2) *
                                               std::pow(f.grid().size() / 2.0, k));
    return apply_symbol(
        f,
        [k](long xi) { return std::pow(Complex(0.0, static_cast<double>(xi)), k); },
        nyq);
}

std::shared_ptr<const std::vector<Complex>> airy_symbol(const Grid& grid, double t) {
    return airy_table(grid, t);
}

std::vector<Complex> inv_dx_symbol(const Grid& grid) {
    std::vector<Complex> table(grid.size());
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (k == grid.nyquist_index()) continue;
        table[k] = Complex(0.0, -1.0 / static_cast<double>(grid.wavenumber(k)));
    }
    return table;
}

Field exp_airy(const Field& f, double t) {
    const auto table = airy_table(f.grid(), t);
    Spectrum s = f.spectrum();
    for (std::size_t k = 0; k < s.size(); ++k) s[k] *= (*table)[k];
    return Field::from_spectrum(f.grid(), s);
}

Field project_zero_mean(const Field& f) {
    Spectrum s = f.spectrum();
    s[0] = 0.0;
    return Field::from_spectrum(f.grid(), s);
}

double sobolev_norm(const Field& f, double gamma) {
    const Grid& g = f.grid();
    const Spectrum s = f.spectrum();
    double sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double xi = static_cast<double>(g.wavenumber(k));
        sum += std::pow(1.0 + xi * xi, gamma) * std::norm(s[k]);
    }
    return std::sqrt(2.0 * std::numbers::pi * sum);
}

double integral(const Field& f) { return 2.0 * std::numbers::pi * f.mean(); }

Field translate(const Field& f, double a) {
    return apply_symbol(
        f, [a](long xi) { return std::polar(1.0, static_cast<double>(xi) * a); }, 1.0);
}

Field truncate_two_thirds(const Field& f) {
    const double cutoff = static_cast<double>(f.grid().size()) / 3.0;
    return apply_symbol(
        f,
        [cutoff](long xi) {
            return std::abs(static_cast<double>(xi)) > cutoff ? Complex(0.0)
                                                              : Complex(1.0);
        },
        0.0);
}

double relative_error(const Field& a, const Field& b, double gamma) {
    const double diff = sobolev_norm(a - b, gamma);
    const double ref = sobolev_norm(b, gamma);
    return ref > 0.0 ? diff / ref : diff;
}

double imag_residue(const Grid& grid, std::span<const Complex> spec) {
    double r = 0.0;
    Field::from_spectrum(grid, spec, &r);
    return r;
}

}  // namespace elri::spectral
