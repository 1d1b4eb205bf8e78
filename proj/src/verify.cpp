#include "elri/verify.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "elri/integrators.hpp"
#include "elri/oracles.hpp"
#include "elri/reference.hpp"
#include "elri/rough_data.hpp"
#include "elri/spectral.hpp"

namespace elri {
namespace {

using namespace spectral;
namespace orc = oracles;

CheckResult make(std::string name, double residual, double tol) {
    return {std::move(name), residual, tol, residual <= tol};
}

double oracle_equivalence(const VerifyOptions& opt, orc::EmbeddedVariant variant) {
    double worst = 0.0;
    for (std::size_t n : {8u, 16u, 32u}) {
        const Grid g(n);
        const long k = orc::alias_free_cutoff(g, 3);
        for (std::size_t i = 0; i < opt.fields_per_grid; ++i) {
            const Field u = random_band_limited(g, k, opt.seed + 1000 * n + i);
            for (double tau : {0.01, 0.05}) {
                const auto emb = orc::embedded_form_step(u, 0.0, tau, variant);
                const Field sch = variant == orc::EmbeddedVariant::ELRI1 ? elri1_step(u, tau)
                                                                          : elri2_step(u, tau);
                worst = std::max(worst, relative_error(sch, emb.u_next, 0.0));
            }
        }
    }
    return worst;
}

double projection_identity(std::uint64_t seed) {
    const Grid g(64);
    double worst = 0.0;
    for (std::size_t i = 0; i < 200; ++i) {
        SplitMix64 rng(seed + i);
        Field f(g);
        for (double& v : f.values()) v = rng.uniform() - 0.3;
        // Both sides zero the Nyquist mode.
        const Field lhs = inv_dx(dx(f, 1));
        const Field rhs = project_zero_mean(orc::band_limit(f, 31));
        worst = std::max(worst, sobolev_norm(lhs - rhs, 0.0) / sobolev_norm(f, 0.0));
    }
    return worst;
}

double isometry(std::uint64_t seed) {
    const Grid g(128);
    double worst = 0.0;
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < 100; ++i) {
        Field f(g);
        for (double& v : f.values()) v = rng.uniform() - 0.5;
        const double t = 10.0 * rng.uniform() - 5.0;
        const double gamma = 3.0 * rng.uniform();
        const double a = sobolev_norm(f, gamma);
        worst = std::max(worst, std::abs(sobolev_norm(exp_airy(f, t), gamma) - a) / a);
    }
    return worst;
}

std::int64_t resonance_mismatches(std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::int64_t bad = 0;
    auto draw = [&] { return static_cast<std::int64_t>(rng.next() % 20001) - 10000; };
    for (int i = 0; i < 10000; ++i) {
        const auto a = draw(), b = draw(), c = draw();
        if (orc::alpha3_direct(a, b) != orc::alpha3_factored(a, b)) ++bad;
        if (orc::alpha4_direct(a, b, c) != orc::alpha4_factored(a, b, c)) ++bad;
    }
    return bad;
}

std::int64_t symmetrization_mismatches(std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::int64_t bad = 0;
    int tested = 0;
    while (tested < 10000) {
        const auto a = static_cast<std::int64_t>(rng.next() % 2001) - 1000;
        const auto b = static_cast<std::int64_t>(rng.next() % 2001) - 1000;
        const auto c = static_cast<std::int64_t>(rng.next() % 2001) - 1000;
        if (a == 0 || b == 0 || c == 0 || a + b + c == 0) continue;
        ++tested;
        if (!orc::symmetrization_holds(a, b, c)) ++bad;
    }
    return bad;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    std::vector<CheckResult> out;

    out.push_back(make("oracle_equivalence_elri1",
                       oracle_equivalence(opt, orc::EmbeddedVariant::ELRI1), 1e-10));
    out.push_back(make("oracle_equivalence_elri2",
                       oracle_equivalence(opt, orc::EmbeddedVariant::ELRI2), 1e-10));
    out.push_back(make("inv_dx_dx_equals_projection", projection_identity(opt.seed), 1e-10));
    out.push_back(make("exp_airy_isometry", isometry(opt.seed), 1e-12));
    out.push_back(make("alpha3_alpha4_integer_identity",
                       static_cast<double>(resonance_mismatches(opt.seed)), 0.0));
    out.push_back(make("multiplier_symmetrization",
                       static_cast<double>(symmetrization_mismatches(opt.seed)), 0.0));

    {
        const Grid g(16);
        const long kq = orc::alias_free_cutoff(g, 2);
        const Field f = random_band_limited(g, kq, opt.seed + 1);
        const Field h = random_band_limited(g, kq, opt.seed + 2);
        const Field f2 = random_band_limited(g, kq, opt.seed + 3);
        const Field h2 = random_band_limited(g, kq, opt.seed + 4);
        const auto c = orc::check_ibp_identity_i(orc::TimeFamily::constant(f),
                                                 orc::TimeFamily::constant(h), 0.3, 0.1, 128);
        const auto m = orc::check_ibp_identity_i(orc::TimeFamily{f, f2, 7.0},
                                                 orc::TimeFamily{h, h2, -3.0}, 0.3, 0.1, 128);
        out.push_back(make("ibp_identity_i", std::max(c.residual, m.residual), 1e-8));

        const long kc = orc::alias_free_cutoff(g, 3);
        const auto ii = orc::check_ibp_identity_ii(random_band_limited(g, kc, opt.seed + 5),
                                                   random_band_limited(g, kc, opt.seed + 6),
                                                   random_band_limited(g, kc, opt.seed + 7),
                                                   0.3, 0.1, 128);
        out.push_back(make("ibp_identity_ii", ii.residual, 1e-8));

        const Field w = random_band_limited(g, kq, opt.seed + 8);
        const double fn = relative_error(orc::fn_quadrature(w, 0.2, 0.05, 64),
                                         orc::fn_closed_form(w, 0.2, 0.05), 0.0);
        out.push_back(make("fn_closed_form_vs_quadrature", fn, 1e-10));
    }

    {
        const Grid g(8);
        const long k = orc::alias_free_cutoff(g, 3);
        const Field a = random_band_limited(g, k, opt.seed + 11);
        const Field b = random_band_limited(g, k, opt.seed + 12);
        const Field c = random_band_limited(g, k, opt.seed + 13);
        const double tn = 0.4, tau = 0.05;
        const Field diff = orc::an_time_integral(a, b, c, tn, tau, orc::AnVariant::ATilde) -
                           orc::an_time_integral(a, b, c, tn, tau, orc::AnVariant::A);
        const Field bnd = (tau / 2.0) * orc::cubic_boundary_term(a, b, c, tn) -
                          (tau / 2.0) * orc::cubic_boundary_term(a, b, c, tn + tau);
        out.push_back(make("an_tilde_minus_an_boundary", relative_error(diff, bnd, 0.0), 1e-10));
    }

    {
        double drift = 0.0;
        const Field u0 = generate_rough({256, 1.0, opt.seed});
        for (SchemeKind s : {SchemeKind::LRI1, SchemeKind::ELRI1, SchemeKind::ELRI2}) {
            const auto traj = evolve(SolverRun{.scheme = s, .tau = 1e-3, .t_final = 1.0, .initial = u0});
            drift = std::max(drift, traj.max_mean_drift);
        }
        out.push_back(make("mean_conservation_1000_steps", drift, 1e-12));
    }

    if (opt.include_reference) {
        const Grid g(64);
        const Field u0 = Field::from_function(g, [](double x) { return std::cos(x); });
        const Field fine = evolve(SolverRun{.scheme = SchemeKind::ELRI2,
                                            .tau = 1e-4,
                                            .t_final = 1.0,
                                            .initial = u0})
                               .final();
        const Field rk = ifrk4_solve(u0, 1.0, 1e-3);
        out.push_back(make("reference_cross_check", relative_error(rk, fine, 0.0), 1e-8));
    }
    return out;
}

std::string verification_json(const std::vector<CheckResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        arr.push_back({{"check_name", r.check_name},
                       {"residual", r.residual},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    }
    return arr.dump(2) + '\n';
}

}  // namespace elri
