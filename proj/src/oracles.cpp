#include "elri/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "elri/errors.hpp"
#include "elri/spectral.hpp"

namespace elri::oracles {

using spectral::exp_airy;
using spectral::inv_dx;

// ---------------------------------------------------------------------------
// Resonance algebra

std::int64_t alpha3_direct(std::int64_t x1, std::int64_t x2) noexcept {
    const std::int64_t xi = x1 + x2;
    return xi * xi * xi - x1 * x1 * x1 - x2 * x2 * x2;
}

std::int64_t alpha3_factored(std::int64_t x1, std::int64_t x2) noexcept {
    return 3 * (x1 + x2) * x1 * x2;
}

std::int64_t alpha4_direct(std::int64_t x1, std::int64_t x2, std::int64_t x3) noexcept {
    const std::int64_t xi = x1 + x2 + x3;
    return xi * xi * xi - x1 * x1 * x1 - x2 * x2 * x2 - x3 * x3 * x3;
}

std::int64_t alpha4_factored(std::int64_t x1, std::int64_t x2, std::int64_t x3) noexcept {
    const std::int64_t xi = x1 + x2 + x3;
    return 3 * (xi * x1 * x2 + xi * x1 * x3 + xi * x2 * x3 - x1 * x2 * x3);
}

bool symmetrization_holds(std::int64_t x1, std::int64_t x2, std::int64_t x3) noexcept {
    const std::int64_t xi = x1 + x2 + x3;
    if (x1 == 0 || x2 == 0 || x3 == 0 || xi == 0) return false;
    // Multiply both sides by 3 xi x1 x2 x3.
    const std::int64_t lhs = 3 * xi * (x2 * x3 + x1 * x3 + x1 * x2);
    const std::int64_t rhs = alpha4_direct(x1, x2, x3) + 3 * x1 * x2 * x3;
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Quadrature

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) throw ConfigError("quadrature needs at least one node");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

// ---------------------------------------------------------------------------
// Frequency sums

namespace {

void guard(const Grid& g) {
    if (g.size() > kMaxOracleN) {
        throw CostGuardError("frequency-sum oracle limited to N <= " +
                             std::to_string(kMaxOracleN) + ", got N = " +
                             std::to_string(g.size()));
    }
}

// Spectral coefficients indexed by integer wavenumber in [-cutoff, cutoff].
class Band {
public:
    Band(const Field& f, long cutoff) : cutoff_(cutoff), c_(2 * cutoff + 1) {
        const Grid& g = f.grid();
        const Spectrum s = f.spectrum();
        double peak = 0.0;
        for (const auto& z : s) peak = std::max(peak, std::abs(z));
        for (std::size_t k = 0; k < s.size(); ++k) {
            const long xi = g.wavenumber(k);
            if (std::abs(xi) <= cutoff) {
                c_[static_cast<std::size_t>(xi + cutoff)] = s[k];
            } else if (std::abs(s[k]) > 1e-12 * peak + 1e-300) {
                throw ConfigError("oracle input has energy at |xi| = " +
                                  std::to_string(std::abs(xi)) +
                                  " beyond the alias-free cutoff " +
                                  std::to_string(cutoff));
            }
        }
    }
    long cutoff() const noexcept { return cutoff_; }
    Complex operator()(long xi) const noexcept {
        return c_[static_cast<std::size_t>(xi + cutoff_)];
    }

private:
    long cutoff_;
    std::vector<Complex> c_;
};

// Accumulates coefficients by integer wavenumber, then maps onto the grid.
class Accumulator {
public:
    explicit Accumulator(const Grid& g) : grid_(g), s_(g.size(), 0.0) {}
    void add(long xi, Complex z) {
        if (!grid_.in_band(xi) || xi == -static_cast<long>(grid_.size() / 2)) {
            throw ConfigError("oracle output frequency " + std::to_string(xi) +
                              " leaves the band");
        }
        s_[grid_.index(xi)] += z;
    }
    Field field() const { return Field::from_spectrum(grid_, s_); }

private:
    Grid grid_;
    Spectrum s_;
};

Complex cis(double phase) { return std::polar(1.0, phase); }

}  // namespace

long alias_free_cutoff(const Grid& grid, int degree) noexcept {
    const long top = static_cast<long>(grid.size() / 2) - 1;
    return top / degree;
}

Field band_limit(const Field& f, long cutoff) {
    return spectral::apply_symbol(
        f,
        [cutoff](long xi) { return std::abs(xi) <= cutoff ? Complex(1.0) : Complex(0.0); },
        0.0);
}

Complex phase_integral(double c, double tau) noexcept {
    if (c == 0.0) return tau;
    return (1.0 - cis(-tau * c)) / Complex(0.0, c);
}

Complex nested_phase_integral(double a, double b, double tau) noexcept {
    if (b != 0.0) return (phase_integral(a, tau) - phase_integral(a + b, tau)) / Complex(0.0, b);
    if (a == 0.0) return 0.5 * tau * tau;
    return (phase_integral(a, tau) - tau * cis(-tau * a)) / Complex(0.0, a);
}

Field an_time_integral(const Field& f1, const Field& f2, const Field& f3, double t_n,
                       double tau, AnVariant variant) {
    const Grid& g = f1.grid();
    guard(g);
    const long k = alias_free_cutoff(g, 3);
    const Band b1(f1, k), b2(f2, k), b3(f3, k);
    Accumulator acc(g);
    for (long x1 = -k; x1 <= k; ++x1) {
        for (long x2 = -k; x2 <= k; ++x2) {
            for (long x3 = -k; x3 <= k; ++x3) {
                const long xi = x1 + x2 + x3;
                if (xi == 0) continue;
                const Complex amp = b1(x1) * b2(x2) * b3(x3);
                if (amp == 0.0) continue;
                const double a4 = static_cast<double>(alpha4_direct(x1, x2, x3));
                const Complex e = phase_integral(a4, tau);
                Complex time_part = e - tau;
                if (variant == AnVariant::ATilde) {
                    time_part += Complex(0.0, 0.5 * tau * a4) * e;
                }
                acc.add(xi, cis(-t_n * a4) * time_part * amp /
                                Complex(0.0, static_cast<double>(xi)));
            }
        }
    }
    return acc.field();
}

Field cubic_boundary_term(const Field& f1, const Field& f2, const Field& f3, double t) {
    const Grid& g = f1.grid();
    guard(g);
    const long k = alias_free_cutoff(g, 3);
    const Band b1(f1, k), b2(f2, k), b3(f3, k);
    Accumulator acc(g);
    for (long x1 = -k; x1 <= k; ++x1) {
        for (long x2 = -k; x2 <= k; ++x2) {
            for (long x3 = -k; x3 <= k; ++x3) {
                const long xi = x1 + x2 + x3;
                if (xi == 0) continue;
                const double a4 = static_cast<double>(alpha4_direct(x1, x2, x3));
                acc.add(xi, cis(-t * a4) * b1(x1) * b2(x2) * b3(x3) /
                                Complex(0.0, static_cast<double>(xi)));
            }
        }
    }
    return acc.field();
}

// ---------------------------------------------------------------------------
// F_n and the embedded integral form

namespace {

void require_mean_free(const Field& w, const char* who) {
    if (std::abs(w.mean()) > 1e-12) {
        throw ConfigError(std::string(who) + " requires a zero-mean field");
    }
}

// exp(t d^3) f, i.e. the inverse linear flow.
Field twist(const Field& f, double t) { return exp_airy(f, -t); }

}  // namespace

Field fn_closed_form(const Field& w, double t_n, double s) {
    require_mean_free(w, "F_n");
    const Field a = inv_dx(w);
    const double t1 = t_n + s;
    Field out = (1.0 / 3.0) * twist(square(exp_airy(a, t1)), t1);
    out -= (1.0 / 3.0) * twist(square(exp_airy(a, t_n)), t_n);
    return out;
}

Field fn_quadrature(const Field& w, double t_n, double s, std::size_t nodes) {
    require_mean_free(w, "F_n");
    Field out(w.grid());
    if (s == 0.0) return out;
    const auto rule = gauss_legendre(nodes, 0.0, s);
    for (std::size_t q = 0; q < nodes; ++q) {
        const double t = t_n + rule.nodes[q];
        out += rule.weights[q] * twist(spectral::dx(square(exp_airy(w, t))), t);
    }
    return out;
}

EmbeddedStep embedded_form_step(const Field& v, double t_n, double tau,
                                EmbeddedVariant variant) {
    const Grid& g = v.grid();
    guard(g);
    require_mean_free(v, "embedded form");
    const long k = alias_free_cutoff(g, 3);
    const Band vb(v, k);

    Accumulator inc(g);

    // (1/2) I1: i xi sum_{x1+x2=xi} exp(-i t_n a3) int_0^tau exp(-i s a3) ds
    for (long x1 = -k; x1 <= k; ++x1) {
        for (long x2 = -k; x2 <= k; ++x2) {
            const long xi = x1 + x2;
            if (xi == 0) continue;
            const double a3 = static_cast<double>(alpha3_direct(x1, x2));
            const Complex term = Complex(0.0, static_cast<double>(xi)) * cis(-t_n * a3) *
                                 phase_integral(a3, tau) * vb(x1) * vb(x2);
            inc.add(xi, 0.5 * term);
        }
    }

    // (1/2) I2 with F_n(v, s) expanded: outer pair (x1, eta), inner pair
    // (x2, x3) with eta = x2 + x3, phases a = xi^3 - x1^3 - eta^3 and
    // b = eta^3 - x2^3 - x3^3 integrated exactly over 0 <= r <= s <= tau.
    for (long x1 = -k; x1 <= k; ++x1) {
        for (long x2 = -k; x2 <= k; ++x2) {
            for (long x3 = -k; x3 <= k; ++x3) {
                const long eta = x2 + x3;
                const long xi = x1 + eta;
                if (eta == 0 || xi == 0) continue;
                const double a = static_cast<double>(xi * xi * xi - x1 * x1 * x1 -
                                                     eta * eta * eta);
                const double b = static_cast<double>(alpha3_direct(x2, x3));
                const Complex term = Complex(0.0, static_cast<double>(xi)) *
                                     Complex(0.0, static_cast<double>(eta)) *
                                     cis(-t_n * (a + b)) * nested_phase_integral(a, b, tau) *
                                     vb(x1) * vb(x2) * vb(x3);
                inc.add(xi, 0.5 * term);
            }
        }
    }

    Field v_next = v + inc.field();
    const AnVariant an = variant == EmbeddedVariant::ELRI1 ? AnVariant::A : AnVariant::ATilde;
    v_next += (1.0 / 18.0) * an_time_integral(v, v, v, t_n, tau, an);

    Field u_next = exp_airy(v_next, t_n + tau);
    return {std::move(v_next), std::move(u_next)};
}

// ---------------------------------------------------------------------------
// Integration-by-parts identities

Field TimeFamily::at(double t) const {
    return std::cos(omega * t) * a + std::sin(omega * t) * b;
}

Field TimeFamily::derivative(double t) const {
    return (-omega * std::sin(omega * t)) * a + (omega * std::cos(omega * t)) * b;
}

TimeFamily TimeFamily::constant(const Field& f) {
    return TimeFamily{f, Field(f.grid()), 0.0};
}

IdentityResidual check_ibp_identity_i(const TimeFamily& f, const TimeFamily& g,
                                      double t_n, double tau, std::size_t nodes) {
    const Grid& grid = f.a.grid();
    const auto rule = gauss_legendre(nodes, 0.0, tau);

    Field lhs(grid);
    Field tail(grid);
    for (std::size_t q = 0; q < nodes; ++q) {
        const double t = rule.nodes[q];
        const double s = t_n + t;
        const Field ft = f.at(t);
        const Field gt = g.at(t);
        lhs += rule.weights[q] *
               twist(spectral::dx(multiply(exp_airy(ft, s), exp_airy(gt, s))), s);

        const Field df = exp_airy(inv_dx(f.derivative(t)), s);
        const Field dg = exp_airy(inv_dx(g.derivative(t)), s);
        const Field pf = exp_airy(inv_dx(ft), s);
        const Field pg = exp_airy(inv_dx(gt), s);
        tail += rule.weights[q] * twist(multiply(df, pg) + multiply(pf, dg), s);
    }

    const double t1 = t_n + tau;
    Field rhs = (1.0 / 3.0) * twist(multiply(exp_airy(inv_dx(f.at(tau)), t1),
                                             exp_airy(inv_dx(g.at(tau)), t1)),
                                    t1);
    rhs -= (1.0 / 3.0) * twist(multiply(exp_airy(inv_dx(f.at(0.0)), t_n),
                                        exp_airy(inv_dx(g.at(0.0)), t_n)),
                               t_n);
    rhs -= (1.0 / 3.0) * tail;

    return {spectral::sobolev_norm(lhs, 0.0), spectral::sobolev_norm(rhs, 0.0),
            spectral::sobolev_norm(lhs - rhs, 0.0)};
}

IdentityResidual check_ibp_identity_ii(const Field& f1, const Field& f2,
                                       const Field& f3, double t_n, double tau,
                                       std::size_t nodes) {
    const auto rule = gauss_legendre(nodes, 0.0, tau);
    double lhs = 0.0;
    for (std::size_t q = 0; q < nodes; ++q) {
        const double s = t_n + rule.nodes[q];
        const Field prod =
            multiply(multiply(exp_airy(f1, s), exp_airy(f2, s)), exp_airy(f3, s));
        lhs += rule.weights[q] * spectral::integral(twist(prod, s));
    }
    const auto boundary = [&](double t) {
        return spectral::integral(multiply(
            multiply(exp_airy(inv_dx(f1), t), exp_airy(inv_dx(f2), t)),
            exp_airy(inv_dx(f3), t)));
    };
    const double rhs = -boundary(t_n + tau) / 3.0 + boundary(t_n) / 3.0;
    return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace elri::oracles
