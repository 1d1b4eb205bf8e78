#pragma once

#include <complex>
#include <span>
#include <vector>

namespace elri {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

namespace fft {

/// c_k = (1/N) sum_j f_j exp(-2 pi i j k / N). Full complex spectrum in
/// standard FFT order.
Spectrum forward(std::span<const double> values);

/// f_j = sum_k c_k exp(2 pi i j k / N). Returns complex samples; the
/// imaginary parts are round-off for conjugate-symmetric input.
std::vector<Complex> inverse(std::span<const Complex> spectrum);

/// Inverse transform assuming conjugate symmetry; reads only modes
/// 0..N/2 and returns the real samples.
std::vector<double> inverse_real(std::span<const Complex> spectrum);

}  // namespace fft
}  // namespace elri
