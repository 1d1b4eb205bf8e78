#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "elri/errors.hpp"
#include "elri/integrators.hpp"
#include "elri/reference.hpp"
#include "elri/rough_data.hpp"
#include "elri/spectral.hpp"

using namespace elri;
using namespace elri::spectral;

namespace {

// Grid products, optionally with two-thirds truncation of the factors.
struct Products {
    bool dealias;

    Field prep(const Field& a) const {
        return dealias ? spectral::truncate_two_thirds(a) : a;
    }
    Field mul(const Field& a, const Field& b) const { return multiply(prep(a), prep(b)); }
    Field sq(const Field& a) const { return square(prep(a)); }
    Field cu(const Field& a) const { return cube(prep(a)); }
};

// Shared first-order terms; u is already validated.
Field lri1_terms(const Field& u, const Field& a, const Field& ea, double tau,
                 const Products& p) {
    Field out = exp_airy(u, tau);
    out += (-1.0 / 6.0) * exp_airy(p.sq(a), tau);
    out += (1.0 / 6.0) * p.sq(ea);
    return out;
}

Field elri1_impl(const Field& u, double tau, const Products& p) {
    // a = d^{-1} u, ea = exp(-tau d^3) d^{-1} u
    const Field a = inv_dx(u);
    const Field ea = exp_airy(a, tau);

    Field out = lri1_terms(u, a, ea, tau, p);
    out += (1.0 / 18.0) * project_zero_mean(p.mul(ea, inv_dx(p.sq(ea))));
    out += (-1.0 / 18.0) * project_zero_mean(p.mul(ea, exp_airy(inv_dx(p.sq(a)), tau)));
    out += (1.0 / 54.0) * exp_airy(inv_dx(p.cu(a)), tau);
    out += (-1.0 / 54.0) * inv_dx(p.cu(ea));
    out += (tau / (12.0 * std::numbers::pi) * integral(p.sq(u))) * ea;
    out += (-tau / 18.0) * inv_dx(exp_airy(p.cu(u), tau));
    return out;
}

Field correction_impl(const Field& u, double tau, const Products& p) {
    Field out = (tau / 36.0) * exp_airy(inv_dx(p.cu(u)), tau);
    out += (-tau / 36.0) * inv_dx(p.cu(exp_airy(u, tau)));
    return out;
}


double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace

TEST_CASE("scheme names parse case-insensitively") {
    CHECK(parse_scheme("elri1") == SchemeKind::ELRI1);
    CHECK(parse_scheme("Elri2") == SchemeKind::ELRI2);
    CHECK(parse_scheme("LRI1") == SchemeKind::LRI1);
    CHECK(to_string(SchemeKind::ELRI2) == "ELRI2");
    CHECK_THROWS_AS(parse_scheme("rk4"), ConfigError);
}

TEST_CASE("LRI2 is reserved") {
    const Field u = generate_rough({32, 1.0, 1});
    CHECK_THROWS_AS(step(SchemeKind::LRI2, u, 0.1), ConfigError);
}

TEST_CASE("fast kernel equals the term-by-term physical-space formulas") {
    for (bool dealias : {false, true}) {
        const Products p{dealias};
        const Field u = generate_rough({128, 1.0, 17});
        for (double tau : {0.01, 0.3}) {
            const Field slow1 = elri1_impl(u, tau, p);
            const Field slow2 = slow1 + correction_impl(u, tau, p);
            const Field a = inv_dx(u);
            const Field slow0 = lri1_terms(u, a, exp_airy(a, tau), tau, p);
            const StepOptions opt{dealias};
            CHECK(max_diff(elri1_step(u, tau, opt), slow1) < 1e-12);
            CHECK(max_diff(elri2_step(u, tau, opt), slow2) < 1e-12);
            CHECK(max_diff(lri1_step(u, tau, opt), slow0) < 1e-12);
            CHECK(max_diff(elri2_correction(u, tau, opt), correction_impl(u, tau, p)) < 1e-12);
        }
    }
}

TEST_CASE("tau = 0 is the identity and zero stays zero") {
    const Field u = generate_rough({64, 2.0, 4});
    for (SchemeKind s : {SchemeKind::LRI1, SchemeKind::ELRI1, SchemeKind::ELRI2}) {
        CHECK(max_diff(step(s, u, 0.0), u) < 1e-14);
        const Field z(Grid(64));
        CHECK(step(s, z, 0.5).max_abs() == 0.0);
    }
}

TEST_CASE("linear regime: small data follow the Airy flow") {
    const Grid g(32);
    const Field u = Field::from_function(g, [](double x) { return 1e-7 * std::sin(3 * x); });
    const Field lin = exp_airy(u, 0.2);
    CHECK(max_diff(elri1_step(u, 0.2), lin) < 1e-13);
}

TEST_CASE("nonzero mean is rejected with the mean in the message") {
    const Grid g(16);
    const Field u = Field::from_function(g, [](double x) { return 0.5 + std::cos(x); });
    CHECK_THROWS_WITH_AS(elri1_step(u, 0.1), doctest::Contains("got mean 0.4999"), ConfigError);
}

TEST_CASE("step count must be an integer") {
    CHECK(step_count(0.25, 1.0) == 4);
    CHECK(step_count(0x1.0p-10, 1.0) == 1024);
    CHECK_THROWS_AS(step_count(0.3, 1.0), ConfigError);
    CHECK_THROWS_AS(step_count(2.0, 1.0), ConfigError);
    CHECK_THROWS_AS(step_count(0.0, 1.0), ConfigError);
}

TEST_CASE("evolve records the requested snapshots") {
    const Field u = generate_rough({32, 2.0, 2});
    const auto tr = evolve(SolverRun{.scheme = SchemeKind::ELRI1, .tau = 0.125, .t_final = 1.0,
                                     .initial = u, .record_every = 3});
    CHECK(tr.steps == 8);
    REQUIRE(tr.times.size() == 4);
    CHECK(tr.times[0] == 0.0);
    CHECK(tr.times[1] == doctest::Approx(0.375));
    CHECK(tr.times[2] == doctest::Approx(0.75));
    CHECK(tr.times[3] == doctest::Approx(1.0));
    const auto bare = evolve(SolverRun{.scheme = SchemeKind::ELRI1, .tau = 0.125, .t_final = 1.0,
                                       .initial = u});
    CHECK(bare.times.size() == 2);
    CHECK(max_diff(bare.final(), tr.final()) == 0.0);
}

TEST_CASE("non-finite values raise BlowUpError with the step index") {
    // cos(N x / 4) samples sum to exactly zero; its cube overflows.
    const Grid g(32);
    Field u(g);
    for (std::size_t j = 0; j < 32; j += 4) {
        u[j] = 1e110;
        u[j + 2] = -1e110;
    }
    try {
        evolve(SolverRun{.scheme = SchemeKind::ELRI2, .tau = 0.5, .t_final = 1.0, .initial = u});
        FAIL("expected blow-up");
    } catch (const BlowUpError& e) {
        CHECK(e.step() == 1);
    }
}

TEST_CASE("mean is conserved to round-off") {
    const Field u = generate_rough({256, 0.5, 8});
    for (SchemeKind s : {SchemeKind::LRI1, SchemeKind::ELRI1, SchemeKind::ELRI2}) {
        const auto tr = evolve(SolverRun{.scheme = s, .tau = 0.01, .t_final = 1.0, .initial = u});
        CHECK(tr.max_mean_drift <= 1e-12);
    }
}

TEST_CASE("mean shift: constants are stationary") {
    const Grid g(16);
    const Field c = Field::from_function(g, [](double) { return 0.75; });
    const auto tr = solve(SolverRun{.scheme = SchemeKind::ELRI2, .tau = 0.1, .t_final = 1.0,
                                    .initial = c, .mean_shift = true});
    CHECK(max_diff(tr.final(), c) < 1e-15);
}

TEST_CASE("mean shift agrees with IF-RK4 on 1 + cos x") {
    const Grid g(64);
    const Field u0 = Field::from_function(g, [](double x) { return 1.0 + std::cos(x); });
    const auto tr = solve(SolverRun{.scheme = SchemeKind::ELRI2, .tau = 1e-3, .t_final = 0.5,
                                    .initial = u0, .mean_shift = true});
    const Field rk = ifrk4_solve(u0, 0.5, 1e-3);
    CHECK(relative_error(tr.final(), rk, 0.0) < 1e-6);
    CHECK(tr.final().mean() == doctest::Approx(1.0).epsilon(1e-14));
    // Without the shift the zero-mean requirement fires.
    CHECK_THROWS_AS(evolve(SolverRun{.scheme = SchemeKind::ELRI2, .tau = 1e-3, .t_final = 0.5,
                                     .initial = u0}),
                    ConfigError);
}

TEST_CASE("ELRI2 agrees with IF-RK4 on smooth data") {
    const Grid g(64);
    const Field u0 = Field::from_function(g, [](double x) { return std::cos(x); });
    const Field e = evolve(SolverRun{.scheme = SchemeKind::ELRI2, .tau = 1e-3, .t_final = 1.0,
                                     .initial = u0}).final();
    CHECK(relative_error(e, ifrk4_solve(u0, 1.0, 1e-3), 0.0) < 1e-7);
}

TEST_CASE("reference cross-check passes on smooth data and fails on a coarse pair") {
    const Grid g(64);
    const Field u0 = Field::from_function(g, [](double x) { return std::cos(x); });
    const auto r = reference_solution(u0, 1.0, 1e-3, {.cross_check = true, .rk4_tau = 1e-3});
    REQUIRE(r.check.has_value());
    CHECK(r.check->pass);
    CHECK(r.check->disagreement <= r.check->tolerance);
    Field nan_data = u0;
    nan_data[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ifrk4_solve(nan_data, 1.0, 0.1), BlowUpError);
    // Far too coarse for rough data: the two references disagree.
    const Field rough = generate_rough({64, 2.0, 42});
    CHECK_THROWS_AS(reference_solution(rough, 1.0, 0.25, {.cross_check = true, .rk4_tau = 0.25}),
                    ReferenceInvalidError);
    const Field rougher = generate_rough({256, 1.0, 42});
    CHECK_THROWS_AS(reference_solution(rougher, 1.0, 0.1, {.cross_check = true, .rk4_tau = 0.1}),
                    ReferenceInvalidError);
}
