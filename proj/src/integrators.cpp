#include "elri/integrators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "elri/errors.hpp"
#include "elri/spectral.hpp"

namespace elri {
namespace {

using spectral::project_zero_mean;

void require_zero_mean(const Field& u, std::string_view who) {
    const double m = u.mean();
    if (!(std::abs(m) <= kMeanTolerance)) {
        std::ostringstream os;
        os.precision(17);
        os << who << " requires zero-mean input, got mean " << m;
        throw ConfigError(os.str());
    }
}

// Spectral-space evaluation of the scheme terms. Each term is assembled
// from the spectrum of u; only d^{-1} u, exp(-tau d^3) u and
// exp(-tau d^3) d^{-1} u are shared between terms. Grid products go
// through one inverse and one forward transform each.
class StepKernel {
public:
    StepKernel(const Field& u, double tau, bool dealias)
        : grid_(u.grid()),
          n_(u.size()),
          airy_(spectral::airy_symbol(grid_, tau)),
          inv_(spectral::inv_dx_symbol(grid_)),
          dealias_(dealias),
          u_hat_(u.spectrum()) {
        u_phys_ = dealias_ ? phys(u_hat_) : Real(u.values().begin(), u.values().end());
        a_hat_ = apply(u_hat_, inv_);
        ea_hat_ = apply(a_hat_, *airy_);
        eu_hat_ = apply(u_hat_, *airy_);
        a_ = phys(a_hat_);
        ea_ = phys(ea_hat_);
        a2_ = spec(pow(a_, 2));
        ea2_ = spec(pow(ea_, 2));
        u3_ = spec(pow(u_phys_, 3));
    }

    // e^{-tau d^3} u - 1/6 e^{-tau d^3} (a)^2 + 1/6 (ea)^2
    Spectrum lri1() const {
        const Spectrum& a2 = a2_;
        const Spectrum& ea2 = ea2_;
        Spectrum out = eu_hat_;
        for (std::size_t k = 0; k < n_; ++k) {
            out[k] += (-1.0 / 6.0) * (*airy_)[k] * a2[k] + (1.0 / 6.0) * ea2[k];
        }
        return out;
    }

    // The six terms ELRI1 adds to LRI1.
    Spectrum elri1_corrections(double tau) const {
        const Spectrum& a2 = a2_;
        const Spectrum& ea2 = ea2_;
        const auto d_ea2 = phys(apply(ea2, inv_));
        const auto ed_a2 = phys(apply(apply(a2, inv_), *airy_));
        Spectrum p1 = spec(product(ea_, d_ea2));
        Spectrum p2 = spec(product(ea_, ed_a2));
        p1[0] = 0.0;
        p2[0] = 0.0;
        const Spectrum a3 = spec(pow(a_, 3));
        const Spectrum ea3 = spec(pow(ea_, 3));
        const Spectrum& u3 = u3_;

        double u2_sum = 0.0;
        for (double v : u_phys_) u2_sum += v * v;
        const double u2_integral = 2.0 * std::numbers::pi * u2_sum / static_cast<double>(n_);
        const double mass_coeff = tau / (12.0 * std::numbers::pi) * u2_integral;

        Spectrum out(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            const Complex e = (*airy_)[k];
            const Complex d = inv_[k];
            out[k] = (1.0 / 18.0) * p1[k] - (1.0 / 18.0) * p2[k] +
                     (1.0 / 54.0) * e * d * a3[k] - (1.0 / 54.0) * d * ea3[k] +
                     mass_coeff * ea_hat_[k] - (tau / 18.0) * d * e * u3[k];
        }
        return out;
    }

    // (tau/36) e^{-tau d^3} d^{-1} u^3 - (tau/36) d^{-1} (e^{-tau d^3} u)^3
    Spectrum elri2_correction(double tau) const {
        const Spectrum& u3 = u3_;
        const Spectrum eu3 = spec(pow(phys(eu_hat_), 3));
        Spectrum out(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            out[k] = (tau / 36.0) * (*airy_)[k] * inv_[k] * u3[k] -
                     (tau / 36.0) * inv_[k] * eu3[k];
        }
        return out;
    }

    Field field(const Spectrum& s) const { return Field(grid_, fft::inverse_real(s)); }

private:
    using Real = std::vector<double>;

    static Spectrum apply(const Spectrum& s, const std::vector<Complex>& symbol) {
        Spectrum out(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) out[k] = s[k] * symbol[k];
        return out;
    }

    // Grid samples of a spectrum, truncated first when dealiasing. Every
    // product factor passes through here.
    Real phys(Spectrum s) const {
        if (dealias_) {
            const double cutoff = static_cast<double>(n_) / 3.0;
            for (std::size_t k = 0; k < n_; ++k) {
                const double xi = static_cast<double>(grid_.wavenumber(k));
                if (k == grid_.nyquist_index() || std::abs(xi) > cutoff) s[k] = 0.0;
            }
        }
        return fft::inverse_real(s);
    }

    Spectrum spec(const Real& v) const { return fft::forward(v); }

    static Real pow(const Real& v, int p) {
        Real out(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[j] = p == 2 ? v[j] * v[j] : v[j] * v[j] * v[j];
        }
        return out;
    }

    static Real product(const Real& a, const Real& b) {
        Real out(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
        return out;
    }

    Grid grid_;
    std::size_t n_;
    std::shared_ptr<const std::vector<Complex>> airy_;
    std::vector<Complex> inv_;
    bool dealias_;
    Real u_phys_;
    Spectrum u_hat_, a_hat_, ea_hat_, eu_hat_;
    Spectrum a2_, ea2_, u3_;
    Real a_, ea_;
};

Spectrum sum(Spectrum a, const Spectrum& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

}  // namespace

std::string_view to_string(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::LRI1: return "LRI1";
        case SchemeKind::ELRI1: return "ELRI1";
        case SchemeKind::ELRI2: return "ELRI2";
        case SchemeKind::LRI2: return "LRI2";
    }
    return "?";
}

SchemeKind parse_scheme(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "LRI1") return SchemeKind::LRI1;
    if (upper == "ELRI1") return SchemeKind::ELRI1;
    if (upper == "ELRI2") return SchemeKind::ELRI2;
    if (upper == "LRI2") return SchemeKind::LRI2;
    throw ConfigError("unknown scheme '" + std::string(name) +
                      "' (expected LRI1, ELRI1 or ELRI2)");
}

Field lri1_step(const Field& u, double tau, const StepOptions& opt) {
    require_zero_mean(u, "LRI1");
    const StepKernel kern(u, tau, opt.dealias);
    return kern.field(kern.lri1());
}

Field elri1_step(const Field& u, double tau, const StepOptions& opt) {
    require_zero_mean(u, "ELRI1");
    const StepKernel kern(u, tau, opt.dealias);
    return kern.field(sum(kern.lri1(), kern.elri1_corrections(tau)));
}

Field elri2_correction(const Field& u, double tau, const StepOptions& opt) {
    require_zero_mean(u, "ELRI2");
    const StepKernel kern(u, tau, opt.dealias);
    return kern.field(kern.elri2_correction(tau));
}

Field elri2_step(const Field& u, double tau, const StepOptions& opt) {
    require_zero_mean(u, "ELRI2");
    const StepKernel kern(u, tau, opt.dealias);
    return kern.field(
        sum(sum(kern.lri1(), kern.elri1_corrections(tau)), kern.elri2_correction(tau)));
}

Field step(SchemeKind kind, const Field& u, double tau, const StepOptions& opt) {
    switch (kind) {
        case SchemeKind::LRI1: return lri1_step(u, tau, opt);
        case SchemeKind::ELRI1: return elri1_step(u, tau, opt);
        case SchemeKind::ELRI2: return elri2_step(u, tau, opt);
        case SchemeKind::LRI2: break;
    }
    throw ConfigError("scheme LRI2 is reserved and not implemented");
}

std::size_t step_count(double tau, double t_final) {
    if (!(tau > 0.0) || !(t_final > 0.0)) {
        throw ConfigError("tau and t_final must be positive");
    }
    const double ratio = t_final / tau;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "t_final / tau = " << ratio << " is not an integer step count";
        throw ConfigError(os.str());
    }
    return static_cast<std::size_t>(n);
}

Trajectory evolve(const SolverRun& run) {
    if (run.scheme == SchemeKind::LRI2) {
        throw ConfigError("scheme LRI2 is reserved and not implemented");
    }
    const std::size_t n = step_count(run.tau, run.t_final);
    require_zero_mean(run.initial, to_string(run.scheme));

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.fields.push_back(run.initial);

    const double mean0 = run.initial.mean();
    Field u = run.initial;
    for (std::size_t k = 1; k <= n; ++k) {
        u = step(run.scheme, u, run.tau, run.options);
        if (!u.all_finite()) {
            throw BlowUpError(k, std::string(to_string(run.scheme)) +
                                     ": non-finite value at step " + std::to_string(k));
        }
        traj.max_mean_drift = std::max(traj.max_mean_drift, std::abs(u.mean() - mean0));
        const bool last = k == n;
        if (last || (run.record_every > 0 && k % run.record_every == 0)) {
            traj.times.push_back(static_cast<double>(k) * run.tau);
            traj.fields.push_back(u);
        }
    }
    traj.steps = n;
    return traj;
}

Trajectory solve_with_mean_shift(const SolverRun& run) {
    const double c = run.initial.mean();
    SolverRun shifted = run;
    shifted.initial = project_zero_mean(run.initial);
    Trajectory traj = evolve(shifted);
    for (std::size_t i = 0; i < traj.fields.size(); ++i) {
        Field phys = spectral::translate(traj.fields[i], c * traj.times[i]);
        for (double& v : phys.values()) v += c;
        traj.fields[i] = std::move(phys);
    }
    return traj;
}

Trajectory solve(const SolverRun& run) {
    return run.mean_shift ? solve_with_mean_shift(run) : evolve(run);
}

}  // namespace elri
