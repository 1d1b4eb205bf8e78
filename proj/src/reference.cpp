#include "elri/reference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "elri/errors.hpp"
#include "elri/integrators.hpp"
#include "elri/spectral.hpp"

namespace elri {
namespace {

using spectral::exp_airy;

Field twisted_rhs(double t, const Field& v) {
    return 0.5 * exp_airy(spectral::dx(square(exp_airy(v, t))), -t);
}

Field elri2_final(const Field& u0, double t_final, double tau) {
    return evolve(SolverRun{.scheme = SchemeKind::ELRI2,
                            .tau = tau,
                            .t_final = t_final,
                            .initial = u0})
        .final();
}

}  // namespace

Field ifrk4_solve(const Field& u0, double t_final, double tau) {
    const std::size_t n = step_count(tau, t_final);
    Field v = u0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * tau;
        const Field k1 = twisted_rhs(t, v);
        const Field k2 = twisted_rhs(t + 0.5 * tau, v + (0.5 * tau) * k1);
        const Field k3 = twisted_rhs(t + 0.5 * tau, v + (0.5 * tau) * k2);
        const Field k4 = twisted_rhs(t + tau, v + tau * k3);
        v += (tau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!v.all_finite()) throw BlowUpError(k + 1, "IF-RK4: non-finite value");
    }
    return exp_airy(v, t_final);
}

ReferenceResult reference_solution(const Field& u0, double t_final, double tau_ref,
                                   const ReferenceOptions& opt) {
    ReferenceResult result{elri2_final(u0, t_final, tau_ref), std::nullopt};
    if (!opt.cross_check) return result;

    const Field& fine = result.solution;
    CrossCheck c;
    try {
        const Field rk = ifrk4_solve(u0, t_final, opt.rk4_tau);
        // Step doubling: for order p, |u_h - u| ~ |u_h - u_2h| / (2^p - 1).
        c.disagreement = spectral::relative_error(rk, fine, 0.0);
        c.elri2_estimate =
            spectral::relative_error(fine, elri2_final(u0, t_final, 2.0 * tau_ref), 0.0) / 3.0;
        c.rk4_estimate =
            spectral::relative_error(rk, ifrk4_solve(u0, t_final, 2.0 * opt.rk4_tau), 0.0) /
            15.0;
    } catch (const BlowUpError& e) {
        throw ReferenceInvalidError(std::string("reference invalid: ") + e.what());
    }
    c.tolerance = std::max(10.0 * std::max(c.elri2_estimate, c.rk4_estimate),
                           kCrossCheckFloor);
    c.pass = std::isfinite(c.tolerance) && c.disagreement <= c.tolerance;
    result.check = c;
    if (!c.pass) {
        std::ostringstream os;
        os << "reference invalid: ELRI2 and IF-RK4 differ by " << c.disagreement
           << " (tolerance " << c.tolerance << ")";
        throw ReferenceInvalidError(os.str());
    }
    return result;
}

}  // namespace elri
