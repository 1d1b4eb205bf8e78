#include <doctest.h>

#include <cmath>

#include "elri/errors.hpp"
#include "elri/rough_data.hpp"
#include "elri/spectral.hpp"

using namespace elri;

TEST_CASE("SplitMix64 reference stream") {
    // First outputs for seed 0, as published with the generator.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    SplitMix64 u(1);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK((x >= 0.0 && x < 1.0));
    }
}

TEST_CASE("rough data is deterministic, zero mean, unit max") {
    const Field a = generate_rough({256, 2.0, 42});
    const Field b = generate_rough({256, 2.0, 42});
    const Field c = generate_rough({256, 2.0, 43});
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == b[j]);
    CHECK(spectral::relative_error(a, c, 0.0) > 0.1);
    CHECK(std::abs(a.mean()) < 1e-15);
    CHECK(a.max_abs() == doctest::Approx(1.0));
}

TEST_CASE("rough data regularity follows theta") {
    // H^{theta - 1/2 - eps} norms stay bounded as N grows, H^{theta + 1} norms grow.
    const double theta = 1.0;
    double low_prev = 0.0, high_prev = 0.0;
    for (std::size_t n : {256u, 1024u, 4096u}) {
        const Field f = generate_rough({n, theta, 5});
        const double low = spectral::sobolev_norm(f, theta - 0.75);
        const double high = spectral::sobolev_norm(f, theta + 1.0);
        if (low_prev > 0.0) {
            CHECK(low / low_prev < 1.2);
            CHECK(high / high_prev > 1.5);
        }
        low_prev = low;
        high_prev = high;
    }
}

TEST_CASE("theta = 0 is plain centered noise") {
    const Field f = generate_rough({64, 0.0, 9});
    CHECK(std::abs(f.mean()) < 1e-15);
    CHECK(f.max_abs() == doctest::Approx(1.0));
}

TEST_CASE("band-limited data stays inside its band") {
    const Grid g(32);
    const Field f = random_band_limited(g, 5, 3);
    const auto s = f.spectrum();
    for (std::size_t k = 0; k < g.size(); ++k) {
        const long xi = g.wavenumber(k);
        if (xi == 0 || std::abs(xi) > 5) CHECK(std::abs(s[k]) < 1e-15);
    }
    CHECK_THROWS_AS(random_band_limited(g, 16, 1), ConfigError);
    CHECK_THROWS_AS(random_band_limited(g, -1, 1), ConfigError);
    CHECK(random_band_limited(g, 0, 1).max_abs() == 0.0);
}
