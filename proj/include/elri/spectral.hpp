#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "elri/field.hpp"

namespace elri {

/// Fourier multiplier operators on the torus. Every operator maps real
/// fields to real fields. The unpaired Nyquist mode -N/2 is zeroed by
/// odd-order symbols (dx with odd k, inv_dx) and left unchanged by the
/// unitary phase operators (exp_airy, translate), whose symbols are not
/// real there.
namespace spectral {

using Symbol = std::function<Complex(long xi)>;

/// Multiplies the spectrum of f by symbol(xi) for every xi in the band.
/// The Nyquist coefficient is multiplied by nyquist_factor instead.
Field apply_symbol(const Field& f, const Symbol& symbol, Complex nyquist_factor);

Spectrum to_spectrum(const Field& f);

/// Zero-mean antiderivative: (i xi)^{-1} on xi != 0, zero on xi = 0.
Field inv_dx(const Field& f);

/// k-th derivative, symbol (i xi)^k.
Field dx(const Field& f, unsigned k = 1);

/// Linear KdV propagator exp(-t d_x^3), symbol exp(i t xi^3). Isometry of
/// every H^gamma; exp_airy(., -t) is its exact inverse.
Field exp_airy(const Field& f, double t);

/// Symbol table of exp_airy(., t) in spectral index order (cached per
/// thread for recently used t).
std::shared_ptr<const std::vector<Complex>> airy_symbol(const Grid& grid, double t);

/// Symbol table of inv_dx in spectral index order.
std::vector<Complex> inv_dx_symbol(const Grid& grid);

/// Removes the mean.
Field project_zero_mean(const Field& f);

/// sqrt(2 pi) * ( sum_xi (1 + xi^2)^gamma |u_hat(xi)|^2 )^{1/2}
double sobolev_norm(const Field& f, double gamma);

/// Periodic trapezoid rule, 2 pi * u_hat(0).
double integral(const Field& f);

/// f(x + a), symbol exp(i xi a).
Field translate(const Field& f, double a);

/// Zeroes every mode with |xi| > N/3 (two-thirds rule).
Field truncate_two_thirds(const Field& f);

/// ||a - b||_{H^gamma} / ||b||_{H^gamma}; the absolute difference if b = 0.
double relative_error(const Field& a, const Field& b, double gamma);

/// Largest |Im| discarded by the inverse transform of spec. Realness probe.
double imag_residue(const Grid& grid, std::span<const Complex> spec);

}  // namespace spectral
}  // namespace elri
