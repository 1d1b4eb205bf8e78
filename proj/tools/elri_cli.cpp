#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elri/errors.hpp"
#include "elri/field_io.hpp"
#include "elri/integrators.hpp"
#include "elri/report.hpp"
#include "elri/rough_data.hpp"
#include "elri/study.hpp"
#include "elri/verify.hpp"

namespace {

using namespace elri;

std::vector<SchemeKind> parse_schemes(const std::vector<std::string>& names) {
    std::vector<SchemeKind> out;
    for (const auto& joined : names) {
        std::stringstream ss(joined);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (!name.empty()) out.push_back(parse_scheme(name));
        }
    }
    return out;
}

// "4:10" is the dyadic ladder 2^-4..2^-10; otherwise a comma list of steps.
std::vector<double> parse_ladder(const std::string& text) {
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        try {
            return dyadic_ladder(std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1)));
        } catch (const std::logic_error&) {
            throw ConfigError("bad --tau-ladder '" + text + "'");
        }
    }
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ConfigError("bad time step '" + item + "' in --tau-ladder");
        }
    }
    return out;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        report::write_text(path, text);
    }
}

struct StudyFlags {
    std::vector<std::string> schemes;
    std::string ladder;
    std::optional<std::size_t> n;
    std::optional<double> theta;
    std::optional<std::uint64_t> seed;
    std::optional<double> gamma;
    std::optional<double> t_final;
    std::optional<double> ref_tau;
    std::string output;
    std::string format = "csv";
    bool full_scale = false;
    bool dealias = false;
    bool cross_check = false;
};

void add_study_flags(CLI::App* cmd, StudyFlags& f, bool global) {
    cmd->add_option("--scheme", f.schemes, "schemes, comma separated (LRI1, ELRI1, ELRI2)");
    cmd->add_option("--tau-ladder", f.ladder, "'a:b' for 2^-a..2^-b, or a comma list of steps");
    cmd->add_option("--n", f.n, "grid points");
    cmd->add_option("--gamma", f.gamma, "Sobolev exponent of the error norm");
    cmd->add_option("--output", f.output, "report path (stdout if omitted)");
    cmd->add_option("--format", f.format, "csv or json");
    cmd->add_flag("--dealias", f.dealias, "2/3-rule truncation of product factors");
    if (global) {
        cmd->add_option("--theta", f.theta, "regularity of the rough data");
        cmd->add_option("--seed", f.seed, "RNG seed");
        cmd->add_option("--t-final", f.t_final, "final time");
        cmd->add_option("--ref-tau", f.ref_tau, "ELRI2 reference step");
        cmd->add_flag("--paper-scale", f.full_scale, "N=2^14, ref tau 1e-4");
        cmd->add_flag("--cross-check", f.cross_check, "validate the reference with IF-RK4");
    }
}

StudyConfig build_config(const StudyFlags& f, StudyConfig cfg) {
    if (!f.schemes.empty()) cfg.schemes = parse_schemes(f.schemes);
    if (!f.ladder.empty()) cfg.taus = parse_ladder(f.ladder);
    if (f.n) cfg.n_points = *f.n;
    if (f.theta) cfg.theta = *f.theta;
    if (f.seed) cfg.seed = *f.seed;
    if (f.gamma) cfg.gamma_err = *f.gamma;
    if (f.t_final) cfg.t_final = *f.t_final;
    if (f.ref_tau) cfg.ref_tau = *f.ref_tau;
    cfg.dealias = f.dealias;
    cfg.cross_check = f.cross_check;
    return cfg;
}

int finish_study(const ConvergenceReport& rep, const StudyFlags& f) {
    const auto fmt = report::parse_format(f.format);
    emit(fmt == report::Format::Csv ? report::to_csv(rep) : report::to_json(rep), f.output);
    for (const auto& fit : rep.fits) {
        std::fprintf(stderr, "%s: fitted order %.3f (residual %.3g, %zu points)\n",
                     std::string(to_string(fit.scheme)).c_str(), fit.estimate.slope,
                     fit.estimate.residual, fit.estimate.points);
    }
    bool diverged = false;
    for (const auto& row : rep.rows) {
        if (row.status != "ok") {
            diverged = true;
            std::fprintf(stderr, "%s tau=%g diverged at step %zu\n",
                         std::string(to_string(row.scheme)).c_str(), row.tau,
                         row.blowup_step.value_or(0));
        }
    }
    return diverged ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-regularity exponential integrators for periodic KdV"};
    app.require_subcommand(1);

    // solve
    std::string solve_scheme = "ELRI1";
    double solve_tau = 0x1.0p-8;
    double solve_t = 1.0;
    std::size_t solve_n = 1024;
    double solve_theta = 2.0;
    std::uint64_t solve_seed = kDefaultSeed;
    std::string solve_out;
    bool solve_dealias = false;
    std::string solve_input;
    auto* solve = app.add_subcommand("solve", "evolve rough (or loaded) data and write u(T)");
    solve->add_option("--scheme", solve_scheme);
    solve->add_option("--tau", solve_tau);
    solve->add_option("--t-final", solve_t);
    solve->add_option("--n", solve_n);
    solve->add_option("--theta", solve_theta);
    solve->add_option("--seed", solve_seed);
    solve->add_option("--input", solve_input, "initial field (.csv, .bin or .kdvf)");
    solve->add_option("--output", solve_out, "field path; stdout CSV if omitted");
    solve->add_flag("--dealias", solve_dealias);

    StudyFlags conv_flags, local_flags;
    auto* converge = app.add_subcommand("converge", "global error study against an ELRI2 reference");
    add_study_flags(converge, conv_flags, true);
    auto* local = app.add_subcommand("local-error", "one-step error study on smooth data");
    add_study_flags(local, local_flags, false);

    std::uint64_t verify_seed = kDefaultSeed;
    std::string verify_out;
    auto* verify = app.add_subcommand("verify", "run the oracle and identity checks");
    verify->add_option("--seed", verify_seed);
    verify->add_option("--output", verify_out, "JSON results path");

    std::size_t gen_n = 1024;
    double gen_theta = 2.0;
    std::uint64_t gen_seed = kDefaultSeed;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen-data", "write rough initial data");
    gen->add_option("--n", gen_n);
    gen->add_option("--theta", gen_theta);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--output", gen_out, "field path; stdout CSV if omitted");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            const Field u0 = solve_input.empty()
                                 ? generate_rough({solve_n, solve_theta, solve_seed})
                                 : io::load(solve_input);
            const auto traj = elri::solve(SolverRun{.scheme = parse_scheme(solve_scheme),
                                            .tau = solve_tau,
                                            .t_final = solve_t,
                                            .initial = u0,
                                            .mean_shift = true,
                                            .options = {solve_dealias}});
            if (solve_out.empty()) {
                io::write_csv(traj.final(), std::cout);
            } else {
                io::save(traj.final(), solve_out);
            }
            std::fprintf(stderr, "%zu steps, max mean drift %.3g\n", traj.steps, traj.max_mean_drift);
            return 0;
        }
        if (*converge) {
            StudyConfig base = conv_flags.full_scale ? full_scale_study() : default_study();
            return finish_study(run_convergence_study(build_config(conv_flags, base)), conv_flags);
        }
        if (*local) {
            StudyConfig base;
            base.schemes = {SchemeKind::LRI1, SchemeKind::ELRI1, SchemeKind::ELRI2};
            base.taus = dyadic_ladder(6, 12);
            base.n_points = 128;
            base.gamma_err = 0.0;
            return finish_study(run_local_error_study(build_config(local_flags, base)), local_flags);
        }
        if (*verify) {
            const auto results = run_verification({.seed = verify_seed});
            bool ok = true;
            for (const auto& r : results) {
                std::fprintf(stderr, "%-36s %-4s residual %.3e (tol %.1e)\n", r.check_name.c_str(),
                             r.pass ? "ok" : "FAIL", r.residual, r.tolerance);
                ok = ok && r.pass;
            }
            emit(verification_json(results), verify_out);
            return ok ? 0 : 1;
        }
        if (*gen) {
            const Field u = generate_rough({gen_n, gen_theta, gen_seed});
            if (gen_out.empty()) {
                io::write_csv(u, std::cout);
            } else {
                io::save(u, gen_out);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
