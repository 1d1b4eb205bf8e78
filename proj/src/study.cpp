#include "elri/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "elri/errors.hpp"
#include "elri/reference.hpp"
#include "elri/spectral.hpp"

namespace elri {
namespace {

// Runs jobs[0..n) on up to `workers` threads; the first exception thrown by
// any job is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& job) {
    const unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

struct Job {
    SchemeKind scheme;
    double tau;
};

std::vector<Job> make_jobs(const StudyConfig& cfg) {
    std::vector<SchemeKind> schemes = cfg.schemes;
    std::sort(schemes.begin(), schemes.end());
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());
    std::vector<Job> jobs;
    for (SchemeKind s : schemes) {
        for (double tau : cfg.taus) jobs.push_back({s, tau});
    }
    return jobs;
}

std::vector<OrderFit> fit_all(const std::vector<ConvergenceRow>& rows) {
    std::vector<OrderFit> fits;
    for (std::size_t i = 0; i < rows.size();) {
        std::size_t j = i;
        while (j < rows.size() && rows[j].scheme == rows[i].scheme) ++j;
        if (auto fit = fit_order(rows[i].scheme, std::span(rows).subspan(i, j - i))) {
            fits.push_back(std::move(*fit));
        }
        i = j;
    }
    return fits;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void StudyConfig::validate() const {
    if (schemes.empty()) throw ConfigError("study needs at least one scheme");
    for (SchemeKind s : schemes) {
        if (s == SchemeKind::LRI2) throw ConfigError("scheme LRI2 is reserved and not implemented");
    }
    if (taus.empty()) throw ConfigError("study needs at least one time step");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] > 0.0)) throw ConfigError("time steps must be positive");
        if (i > 0 && !(taus[i] < taus[i - 1])) {
            throw ConfigError("tau ladder must be strictly decreasing");
        }
        step_count(taus[i], t_final);
    }
    if (!(gamma_err >= 0.0)) throw ConfigError("gamma_err must be nonnegative");
    if (!(theta >= 0.0)) throw ConfigError("theta must be nonnegative");
    if (!(ref_tau > 0.0) || ref_tau > taus.back() / 10.0 * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "ref_tau " << ref_tau << " must be <= min(tau)/10 = " << taus.back() / 10.0;
        throw ConfigError(os.str());
    }
    step_count(ref_tau, t_final);
    Grid{n_points};
}

std::vector<double> dyadic_ladder(int first, int last) {
    std::vector<double> taus;
    for (int k = first; k <= last; ++k) taus.push_back(std::ldexp(1.0, -k));
    return taus;
}

StudyConfig default_study() {
    StudyConfig cfg;
    cfg.taus = dyadic_ladder(4, 10);
    return cfg;
}

StudyConfig full_scale_study() {
    StudyConfig cfg;
    cfg.n_points = 1 << 14;
    cfg.taus = dyadic_ladder(3, 9);
    cfg.ref_tau = 1e-4;
    return cfg;
}

OrderEstimate estimate_order(std::span<const std::pair<double, double>> tau_err) {
    std::vector<double> x, y;
    for (const auto& [tau, err] : tau_err) {
        if (std::isfinite(err) && err > 0.0 && tau > 0.0) {
            x.push_back(std::log(tau));
            y.push_back(std::log(err));
        }
    }
    if (x.size() < 2) {
        throw InsufficientDataError("order fit needs at least two finite errors, got " +
                                    std::to_string(x.size()));
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw InsufficientDataError("order fit needs two distinct time steps");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        ss += r * r;
    }
    return {slope, std::sqrt(ss / n), x.size()};
}

std::optional<OrderFit> fit_order(SchemeKind scheme, std::span<const ConvergenceRow> rows) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        if (r.scheme == scheme && r.status == "ok" && std::isfinite(r.error_rel) &&
            r.error_rel > 0.0) {
            pts.emplace_back(r.tau, r.error_rel);
        }
    }
    if (pts.size() < 2) return std::nullopt;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    OrderFit fit{scheme, estimate_order(pts), {}};
    if (fit.estimate.residual > kPreasymptoticResidual && pts.size() >= 4) {
        fit.excluded_taus = {pts[0].first, pts[1].first};
        fit.estimate = estimate_order(std::span(pts).subspan(2));
    }
    return fit;
}

const OrderFit* ConvergenceReport::fit_for(SchemeKind scheme) const {
    for (const auto& f : fits) {
        if (f.scheme == scheme) return &f;
    }
    return nullptr;
}

const ConvergenceRow* ConvergenceReport::row(SchemeKind scheme, double tau) const {
    for (const auto& r : rows) {
        if (r.scheme == scheme && r.tau == tau) return &r;
    }
    return nullptr;
}

unsigned default_workers() {
    if (const char* env = std::getenv("ELRI_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ConvergenceReport run_convergence_study(const StudyConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const Field u0 = generate_rough({cfg.n_points, cfg.theta, cfg.seed});
    ReferenceOptions ropt;
    ropt.cross_check = cfg.cross_check;
    const Field ref = reference_solution(u0, cfg.t_final, cfg.ref_tau, ropt).solution;

    const auto jobs = make_jobs(cfg);
    std::vector<ConvergenceRow> rows(jobs.size());
    const StepOptions sopt{cfg.dealias};
    parallel_for(jobs.size(), cfg.workers ? cfg.workers : default_workers(), [&](std::size_t i) {
        ConvergenceRow& row = rows[i];
        row.scheme = jobs[i].scheme;
        row.tau = jobs[i].tau;
        try {
            const Trajectory traj = evolve(SolverRun{.scheme = row.scheme,
                                                     .tau = row.tau,
                                                     .t_final = cfg.t_final,
                                                     .initial = u0,
                                                     .options = sopt});
            row.error_rel = spectral::relative_error(traj.final(), ref, cfg.gamma_err);
        } catch (const BlowUpError& e) {
            row.error_rel = std::numeric_limits<double>::quiet_NaN();
            row.status = "diverged";
            row.blowup_step = e.step();
        }
    });

    ConvergenceReport report;
    report.kind = StudyKind::Convergence;
    report.rows = std::move(rows);
    report.fits = fit_all(report.rows);
    report.n_points = cfg.n_points;
    report.theta = cfg.theta;
    report.seed = cfg.seed;
    report.gamma = cfg.gamma_err;
    report.t_final = cfg.t_final;
    report.ref_tau = cfg.ref_tau;
    report.wall_seconds = seconds_since(t0);
    return report;
}

Field smooth_initial_data(const Grid& grid) {
    return Field::from_function(grid, [](double x) { return std::cos(x) + 0.5 * std::sin(2.0 * x); });
}

ConvergenceReport run_local_error_study(const StudyConfig& cfg) {
    if (cfg.schemes.empty() || cfg.taus.empty()) {
        throw ConfigError("local-error study needs schemes and time steps");
    }
    for (SchemeKind s : cfg.schemes) {
        if (s == SchemeKind::LRI2) throw ConfigError("scheme LRI2 is reserved and not implemented");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const Grid grid(cfg.n_points);
    const Field u0 = smooth_initial_data(grid);

    // One IF-RK4 reference per tau with 64 substeps; RK4's error over one
    // step then sits far below the tau^3 signal of ELRI2.
    constexpr double kSubsteps = 64.0;
    std::vector<Field> refs;
    refs.reserve(cfg.taus.size());
    for (double tau : cfg.taus) refs.push_back(ifrk4_solve(u0, tau, tau / kSubsteps));

    const auto jobs = make_jobs(cfg);
    std::vector<ConvergenceRow> rows(jobs.size());
    parallel_for(jobs.size(), cfg.workers ? cfg.workers : default_workers(), [&](std::size_t i) {
        const auto it = std::find(cfg.taus.begin(), cfg.taus.end(), jobs[i].tau);
        const Field& ref = refs[static_cast<std::size_t>(it - cfg.taus.begin())];
        const Field one = step(jobs[i].scheme, u0, jobs[i].tau, StepOptions{cfg.dealias});
        rows[i] = ConvergenceRow{jobs[i].scheme, jobs[i].tau,
                                 spectral::relative_error(one, ref, cfg.gamma_err), "ok",
                                 std::nullopt};
    });

    ConvergenceReport report;
    report.kind = StudyKind::LocalError;
    report.rows = std::move(rows);
    report.fits = fit_all(report.rows);
    report.n_points = cfg.n_points;
    report.theta = std::numeric_limits<double>::infinity();
    report.seed = 0;
    report.gamma = cfg.gamma_err;
    report.t_final = 0.0;
    report.ref_tau = cfg.taus.back() / kSubsteps;
    report.wall_seconds = seconds_since(t0);
    return report;
}

}  // namespace elri
