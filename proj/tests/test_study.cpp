#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "elri/errors.hpp"
#include "elri/rough_data.hpp"
#include "elri/study.hpp"

using namespace elri;

namespace {

std::vector<std::pair<double, double>> power_law(double c, double p, std::vector<double> taus) {
    std::vector<std::pair<double, double>> out;
    for (double t : taus) out.emplace_back(t, c * std::pow(t, p));
    return out;
}

StudyConfig small_config() {
    StudyConfig cfg;
    cfg.schemes = {SchemeKind::ELRI1, SchemeKind::ELRI2};
    cfg.taus = dyadic_ladder(3, 5);
    cfg.n_points = 64;
    cfg.theta = 2.0;
    cfg.ref_tau = 0x1.0p-9;
    return cfg;
}

}  // namespace

TEST_CASE("estimate_order on exact power laws") {
    const auto taus = dyadic_ladder(2, 8);
    auto one = power_law(5.0, 1.0, taus);
    auto e1 = estimate_order(one);
    CHECK(e1.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e1.residual < 1e-12);
    CHECK(e1.points == taus.size());
    auto two = power_law(0.1, 2.0, taus);
    CHECK(estimate_order(two).slope == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("estimate_order with noise") {
    SplitMix64 rng(1);
    std::vector<std::pair<double, double>> pts;
    for (double t : dyadic_ladder(2, 10)) {
        pts.emplace_back(t, 3.0 * std::pow(t, 1.5) * (1.0 + 0.01 * (2 * rng.uniform() - 1)));
    }
    CHECK(std::abs(estimate_order(pts).slope - 1.5) < 0.05);
}

TEST_CASE("estimate_order skips non-finite points and needs two") {
    std::vector<std::pair<double, double>> pts{
        {0.5, 0.5}, {0.25, std::numeric_limits<double>::quiet_NaN()}, {0.125, 0.125}};
    const auto e = estimate_order(pts);
    CHECK(e.points == 2);
    CHECK(e.slope == doctest::Approx(1.0));
    std::vector<std::pair<double, double>> one{{0.5, 0.1}, {0.25, 0.0}};
    CHECK_THROWS_AS(estimate_order(one), InsufficientDataError);
}

TEST_CASE("fit_order drops the two largest steps in the pre-asymptotic regime") {
    std::vector<ConvergenceRow> rows;
    const auto taus = dyadic_ladder(1, 6);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        // The first two points sit on a plateau.
        const double err = i < 2 ? 0.01 : 0.5 * taus[i];
        rows.push_back({SchemeKind::ELRI1, taus[i], err, "ok", std::nullopt});
    }
    const auto fit = fit_order(SchemeKind::ELRI1, rows);
    REQUIRE(fit.has_value());
    CHECK(fit->estimate.slope == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(fit->excluded_taus.size() == 2);
    CHECK(fit->excluded_taus[0] == 0.5);
    CHECK_FALSE(fit_order(SchemeKind::ELRI2, rows).has_value());
}

TEST_CASE("config validation") {
    StudyConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    auto bad = cfg;
    bad.taus = {0.125, 0.25};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.ref_tau = 0.01;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.gamma_err = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.schemes = {SchemeKind::LRI2};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.taus = {0.3};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("dyadic ladders and presets") {
    const auto l = dyadic_ladder(4, 6);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == 0.0625);
    CHECK(l[2] == 0.015625);
    CHECK(default_study().n_points == 1024);
    CHECK(default_study().taus.size() == 7);
    const auto p = full_scale_study();
    CHECK(p.n_points == 16384);
    CHECK(p.ref_tau == 1e-4);
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("a single step size yields one row and no fit") {
    auto cfg = small_config();
    cfg.schemes = {SchemeKind::ELRI1};
    cfg.taus = {0.125};
    const auto r = run_convergence_study(cfg);
    CHECK(r.rows.size() == 1);
    CHECK(r.fits.empty());
    CHECK(std::isfinite(r.rows[0].error_rel));
}

TEST_CASE("row order is independent of the worker count") {
    auto cfg = small_config();
    cfg.workers = 1;
    const auto a = run_convergence_study(cfg);
    cfg.workers = 4;
    const auto b = run_convergence_study(cfg);
    REQUIRE(a.rows.size() == 6);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].scheme == b.rows[i].scheme);
        CHECK(a.rows[i].tau == b.rows[i].tau);
        CHECK(a.rows[i].error_rel == b.rows[i].error_rel);
    }
    CHECK(a.rows[0].scheme == SchemeKind::ELRI1);
    CHECK(a.rows[0].tau > a.rows[1].tau);
    CHECK(a.row(SchemeKind::ELRI2, 0.03125) != nullptr);
    CHECK(a.fit_for(SchemeKind::ELRI2) != nullptr);
}

TEST_CASE("halving the reference step barely moves the errors") {
    auto cfg = small_config();
    cfg.schemes = {SchemeKind::ELRI1};
    const auto a = run_convergence_study(cfg);
    cfg.ref_tau /= 2;
    const auto b = run_convergence_study(cfg);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(std::abs(a.rows[i].error_rel / b.rows[i].error_rel - 1.0) < 0.01);
    }
}

TEST_CASE("diverged rows are left out of the fit") {
    std::vector<ConvergenceRow> rows;
    rows.push_back({SchemeKind::ELRI1, 0.5, std::numeric_limits<double>::quiet_NaN(), "diverged", 2});
    for (double t : {0.25, 0.125, 0.0625}) rows.push_back({SchemeKind::ELRI1, t, t * t, "ok", std::nullopt});
    const auto fit = fit_order(SchemeKind::ELRI1, rows);
    REQUIRE(fit.has_value());
    CHECK(fit->estimate.points == 3);
    CHECK(fit->estimate.slope == doctest::Approx(2.0));
}

TEST_CASE("local-error slopes on smooth data") {
    StudyConfig cfg;
    cfg.schemes = {SchemeKind::LRI1, SchemeKind::ELRI1, SchemeKind::ELRI2};
    cfg.taus = dyadic_ladder(6, 11);
    cfg.n_points = 64;
    cfg.gamma_err = 0.0;
    const auto r = run_local_error_study(cfg);
    CHECK(std::isinf(r.theta));
    CHECK(r.fit_for(SchemeKind::LRI1)->estimate.slope == doctest::Approx(2.0).epsilon(0.1));
    CHECK(r.fit_for(SchemeKind::ELRI1)->estimate.slope == doctest::Approx(2.0).epsilon(0.1));
    CHECK(r.fit_for(SchemeKind::ELRI2)->estimate.slope == doctest::Approx(3.0).epsilon(0.07));
}

TEST_CASE("acceptance slopes are insensitive to dealiasing") {
    StudyConfig cfg;
    cfg.schemes = {SchemeKind::ELRI1};
    cfg.taus = dyadic_ladder(5, 8);
    cfg.n_points = 256;
    cfg.theta = 3.0;
    cfg.ref_tau = 0x1.0p-12;
    const double plain = run_convergence_study(cfg).fit_for(SchemeKind::ELRI1)->estimate.slope;
    cfg.dealias = true;
    const double trunc = run_convergence_study(cfg).fit_for(SchemeKind::ELRI1)->estimate.slope;
    CHECK(std::abs(plain - trunc) < 0.1);
}
