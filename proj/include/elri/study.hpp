#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elri/integrators.hpp"
#include "elri/rough_data.hpp"

namespace elri {

struct StudyConfig {
    std::vector<SchemeKind> schemes{SchemeKind::ELRI1};
    /// Strictly decreasing time steps.
    std::vector<double> taus;
    std::size_t n_points = 1024;
    double theta = 2.0;
    std::uint64_t seed = kDefaultSeed;
    /// Sobolev exponent of the error norm.
    double gamma_err = 1.0;
    double t_final = 1.0;
    /// Step of the ELRI2 reference; must be <= min(taus) / 10.
    double ref_tau = 0x1.0p-14;
    bool dealias = false;
    /// Cross-validate the reference against IF-RK4 (smooth data only).
    bool cross_check = false;
    /// 0 selects ELRI_WORKERS or the hardware concurrency.
    unsigned workers = 0;

    /// Throws ConfigError on violated invariants.
    void validate() const;
};

/// tau_k = 2^{-k} for k = first..last.
std::vector<double> dyadic_ladder(int first, int last);

/// Desk-scale defaults: N = 1024, T = 1, ladder 2^-4..2^-10, ref 2^-14.
StudyConfig default_study();
/// N = 2^14, T = 1, ref tau = 1e-4, ladder 2^-3..2^-9.
StudyConfig full_scale_study();

struct ConvergenceRow {
    SchemeKind scheme = SchemeKind::ELRI1;
    double tau = 0.0;
    /// NaN when the run diverged.
    double error_rel = 0.0;
    /// "ok" or "diverged"
    std::string status = "ok";
    std::optional<std::size_t> blowup_step;
};

struct OrderEstimate {
    double slope = 0.0;
    /// RMS deviation of log(err) from the fitted line.
    double residual = 0.0;
    std::size_t points = 0;
};

/// Least-squares slope of log(err) against log(tau). Non-finite or
/// non-positive errors are skipped; throws InsufficientDataError when fewer
/// than two usable points remain.
OrderEstimate estimate_order(std::span<const std::pair<double, double>> tau_err);

/// Residual above which the two largest steps are dropped from the fit.
inline constexpr double kPreasymptoticResidual = 0.05;

struct OrderFit {
    SchemeKind scheme = SchemeKind::ELRI1;
    OrderEstimate estimate;
    std::vector<double> excluded_taus;
};

/// Fits one scheme's rows; when the full fit's residual exceeds
/// kPreasymptoticResidual and at least four points exist, the two largest
/// steps are excluded and recorded.
std::optional<OrderFit> fit_order(SchemeKind scheme, std::span<const ConvergenceRow> rows);

enum class StudyKind { Convergence, LocalError };

struct ConvergenceReport {
    StudyKind kind = StudyKind::Convergence;
    std::vector<ConvergenceRow> rows;
    std::vector<OrderFit> fits;
    std::size_t n_points = 0;
    /// Infinity for the smooth built-in data of local-error studies.
    double theta = 0.0;
    std::uint64_t seed = 0;
    double gamma = 0.0;
    double t_final = 0.0;
    double ref_tau = 0.0;
    double wall_seconds = 0.0;

    const OrderFit* fit_for(SchemeKind scheme) const;
    const ConvergenceRow* row(SchemeKind scheme, double tau) const;
};

/// Global-error study: rough data generated once, ELRI2 reference at
/// ref_tau, every (scheme, tau) run evolved to t_final. Rows are sorted by
/// scheme, then by decreasing tau.
ConvergenceReport run_convergence_study(const StudyConfig& cfg);

/// Smooth built-in data for local-error studies: cos(x) + sin(2x)/2.
Field smooth_initial_data(const Grid& grid);

/// One-step errors against an IF-RK4 reference over tau. Uses
/// cfg.schemes, cfg.taus, cfg.n_points and cfg.gamma_err; the data is
/// smooth_initial_data.
ConvergenceReport run_local_error_study(const StudyConfig& cfg);

/// Worker count from ELRI_WORKERS, else hardware concurrency (at least 1).
unsigned default_workers();

}  // namespace elri
