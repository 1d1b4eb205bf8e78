#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "elri/field.hpp"

namespace elri {

/// Time-stepping schemes for u_t + u_xxx = (1/2)(u^2)_x on the torus.
/// LRI2 is a reserved name: selecting it is a configuration error.
enum class SchemeKind { LRI1, ELRI1, ELRI2, LRI2 };

std::string_view to_string(SchemeKind kind) noexcept;
/// Case-insensitive; throws ConfigError for unknown names.
SchemeKind parse_scheme(std::string_view name);

struct StepOptions {
    /// Apply the two-thirds truncation to every factor before a grid product.
    bool dealias = false;
};

// Each step assumes a zero-mean input (|mean| <= 1e-12) and throws
// ConfigError naming the mean otherwise.

/// Baseline first-order low-regularity step (three terms).
Field lri1_step(const Field& u, double tau, const StepOptions& opt = {});

/// Embedded first-order step: the LRI1 terms plus six correction terms.
Field elri1_step(const Field& u, double tau, const StepOptions& opt = {});

/// Embedded second-order step: elri1_step plus elri2_correction.
Field elri2_step(const Field& u, double tau, const StepOptions& opt = {});

/// (tau/36) exp(-tau d^3) d^{-1} (u^3) - (tau/36) d^{-1} (exp(-tau d^3) u)^3
Field elri2_correction(const Field& u, double tau, const StepOptions& opt = {});

Field step(SchemeKind kind, const Field& u, double tau, const StepOptions& opt = {});

inline constexpr double kMeanTolerance = 1e-12;

struct SolverRun {
    SchemeKind scheme = SchemeKind::ELRI1;
    double tau = 0.0;
    double t_final = 0.0;
    Field initial;
    /// 0 stores only t = 0 and t = T; k > 0 stores every k-th step and T.
    std::size_t record_every = 0;
    /// Evolve u - mean and translate back (see solve_with_mean_shift).
    bool mean_shift = false;
    StepOptions options{};
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> fields;
    std::size_t steps = 0;
    /// Largest |mean(u^n) - mean(u^0)| over all steps.
    double max_mean_drift = 0.0;

    const Field& final() const { return fields.back(); }
};

/// Number of steps T/tau; throws ConfigError unless it is within 1e-9 of a
/// positive integer.
std::size_t step_count(double tau, double t_final);

/// Applies the selected step T/tau times. Throws BlowUpError with the
/// step index when a non-finite value appears.
Trajectory evolve(const SolverRun& run);

/// For data with mean c: evolves u0 - c with the zero-mean scheme and
/// reconstructs u(t_n, x) = u_tilde^n(x + c t_n) + c.
Trajectory solve_with_mean_shift(const SolverRun& run);

/// evolve or solve_with_mean_shift according to run.mean_shift.
Trajectory solve(const SolverRun& run);

}  // namespace elri
