#include "elri/rough_data.hpp"

#include <cmath>

#include "elri/errors.hpp"
#include "elri/spectral.hpp"

namespace elri {

Field generate_rough(const RoughSpec& spec) {
    if (!(spec.theta >= 0.0)) throw ConfigError("theta must be nonnegative");
    const Grid grid(spec.n_points);

    SplitMix64 rng(spec.seed);
    Field noise(grid);
    for (double& v : noise.values()) v = rng.uniform();

    // |xi|^{-theta} is even, so the Nyquist mode keeps its real coefficient.
    const double theta = spec.theta;
    const double nyq = std::pow(static_cast<double>(spec.n_points) / 2.0, -theta);
    Field smoothed = spectral::apply_symbol(
        noise,
        [theta](long xi) {
            return xi == 0 ? Complex(0.0)
                           : Complex(std::pow(std::abs(static_cast<double>(xi)), -theta));
        },
        nyq);

    // Re-zero the mean exactly after the inverse transform's round-off.
    const double m = smoothed.mean();
    for (double& v : smoothed.values()) v -= m;
    const double peak = smoothed.max_abs();
    smoothed *= 1.0 / peak;
    return smoothed;
}

Field random_band_limited(const Grid& grid, long cutoff, std::uint64_t seed) {
    if (cutoff < 0 || cutoff >= static_cast<long>(grid.size() / 2)) {
        throw ConfigError("band-limit cutoff must lie in [0, N/2)");
    }
    SplitMix64 rng(seed);
    Spectrum s(grid.size(), 0.0);
    for (long xi = 1; xi <= cutoff; ++xi) {
        const Complex c(rng.uniform() - 0.5, rng.uniform() - 0.5);
        s[grid.index(xi)] = c;
        s[grid.index(-xi)] = std::conj(c);
    }
    return Field::from_spectrum(grid, s);
}

}  // namespace elri
