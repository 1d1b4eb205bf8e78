#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "elri/field.hpp"

// Slow, small-N reference computations. Everything here works on exact
// integer frequency triples with closed-form time integrals, independent of
// the physical-space scheme formulas it is used to check.
namespace elri::oracles {

// ---------------------------------------------------------------------------
// Resonance algebra

/// xi^3 - x1^3 - x2^3 with xi = x1 + x2.
std::int64_t alpha3_direct(std::int64_t x1, std::int64_t x2) noexcept;
/// 3 xi x1 x2 with xi = x1 + x2.
std::int64_t alpha3_factored(std::int64_t x1, std::int64_t x2) noexcept;
/// xi^3 - x1^3 - x2^3 - x3^3 with xi = x1 + x2 + x3.
std::int64_t alpha4_direct(std::int64_t x1, std::int64_t x2, std::int64_t x3) noexcept;
/// 3 (xi x1 x2 + xi x1 x3 + xi x2 x3 - x1 x2 x3).
std::int64_t alpha4_factored(std::int64_t x1, std::int64_t x2, std::int64_t x3) noexcept;

/// 1/x1 + 1/x2 + 1/x3 == alpha4 / (3 xi x1 x2 x3) + 1/xi, checked exactly
/// after clearing denominators. Requires all of x1, x2, x3, xi nonzero.
bool symmetrization_holds(std::int64_t x1, std::int64_t x2, std::int64_t x3) noexcept;

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

inline constexpr std::size_t kDefaultNodes = 64;

// ---------------------------------------------------------------------------
// Frequency sums

/// Largest grid size accepted by the O(N^3) sums.
inline constexpr std::size_t kMaxOracleN = 32;

/// Largest |xi| such that products of `degree` fields band-limited to it
/// stay strictly inside the band (no aliasing, no Nyquist).
long alias_free_cutoff(const Grid& grid, int degree) noexcept;

/// Zeroes every mode with |xi| > cutoff.
Field band_limit(const Field& f, long cutoff);

/// int_0^tau exp(-i s c) ds
Complex phase_integral(double c, double tau) noexcept;

/// int_0^tau exp(-i s a) int_0^s exp(-i r b) dr ds
Complex nested_phase_integral(double a, double b, double tau) noexcept;

enum class AnVariant { A, ATilde };

/// int_0^tau A_n(f1, f2, f3)(t) dt (or the A-tilde variant), by direct
/// summation over frequency triples with exact phase integrals. Inputs must
/// be band-limited to alias_free_cutoff(grid, 3).
Field an_time_integral(const Field& f1, const Field& f2, const Field& f3, double t_n,
                       double tau, AnVariant variant);

/// exp(t d^3) d^{-1} (exp(-t d^3) f1 * exp(-t d^3) f2 * exp(-t d^3) f3) by
/// triple sum.
Field cubic_boundary_term(const Field& f1, const Field& f2, const Field& f3, double t);

// ---------------------------------------------------------------------------
// F_n and the embedded integral form

/// Closed form of F_n(w, s) = int_0^s exp((t_n+r) d^3) d_x (exp(-(t_n+r) d^3) w)^2 dr.
Field fn_closed_form(const Field& w, double t_n, double s);

/// The defining integral of F_n by Gauss-Legendre quadrature in r.
Field fn_quadrature(const Field& w, double t_n, double s,
                    std::size_t nodes = kDefaultNodes);

enum class EmbeddedVariant { ELRI1, ELRI2 };

struct EmbeddedStep {
    Field v_next;  ///< twisted variable at t_{n+1}
    Field u_next;  ///< exp(-t_{n+1} d^3) v_next
};

/// One step of the embedded integral form in the twisted variable:
///   v + (1/2) I1 + (1/2) I2 + (1/18) int_0^tau A_n(v) ds
/// with I1 the quadratic Duhamel integral, I2 the integral containing
/// F_n(v, s), and A_n replaced by A-tilde for ELRI2. I1 and I2 are computed
/// with exact per-frequency phase integrals.
EmbeddedStep embedded_form_step(const Field& v, double t_n, double tau,
                                EmbeddedVariant variant);

// ---------------------------------------------------------------------------
// Integration-by-parts identities

/// f(t) = cos(omega t) a + sin(omega t) b, with analytic time derivative.
struct TimeFamily {
    Field a;
    Field b;
    double omega = 0.0;

    Field at(double t) const;
    Field derivative(double t) const;
    static TimeFamily constant(const Field& f);
};

struct IdentityResidual {
    double lhs = 0.0;       ///< L^2 norm (or value) of the left side
    double rhs = 0.0;       ///< L^2 norm (or value) of the right side
    double residual = 0.0;  ///< L^2 norm (or absolute value) of lhs - rhs
};

/// Quadratic integration-by-parts identity for time-dependent f, g:
/// the Duhamel integral of d_x(e f * e g) against its boundary terms and
/// the integral of the time derivatives.
IdentityResidual check_ibp_identity_i(const TimeFamily& f, const TimeFamily& g,
                                      double t_n, double tau,
                                      std::size_t nodes = kDefaultNodes);

/// Cubic space-time identity for time-independent f1, f2, f3 (a scalar).
IdentityResidual check_ibp_identity_ii(const Field& f1, const Field& f2,
                                       const Field& f3, double t_n, double tau,
                                       std::size_t nodes = kDefaultNodes);

}  // namespace elri::oracles
