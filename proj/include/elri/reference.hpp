#pragma once

#include <optional>

#include "elri/field.hpp"

namespace elri {

/// Classical RK4 on the twisted equation v_t = (1/2) e^{t d^3} d_x (e^{-t d^3} v)^2,
/// i.e. an integrating-factor RK4 for KdV. Returns u(t0 + T) given u(t0);
/// the result does not depend on t0, which only fixes the twist origin.
Field ifrk4_solve(const Field& u0, double t_final, double tau);

struct CrossCheck {
    double disagreement = 0.0;     ///< relative L^2 gap ELRI2 vs IF-RK4
    double elri2_estimate = 0.0;   ///< step-doubling error estimate of ELRI2
    double rk4_estimate = 0.0;     ///< step-doubling error estimate of IF-RK4
    double tolerance = 0.0;
    bool pass = false;
};

struct ReferenceOptions {
    /// Cross-validate against IF-RK4 (meaningful for smooth data only).
    bool cross_check = false;
    double rk4_tau = 1e-3;
};

struct ReferenceResult {
    Field solution;
    std::optional<CrossCheck> check;
};

/// Tolerance floor for the cross-check when both estimates are at round-off.
inline constexpr double kCrossCheckFloor = 1e-12;

/// ELRI2 at tau_ref. With cross_check, throws ReferenceInvalidError if the
/// two references differ by more than 10x the larger step-doubling error
/// estimate.
ReferenceResult reference_solution(const Field& u0, double t_final, double tau_ref,
                                   const ReferenceOptions& opt = {});

}  // namespace elri
