#include "elri/report.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "elri/errors.hpp"

namespace elri::report {
namespace {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw IoError("bad number in report CSV: " + s);
    return v;
}

std::string_view kind_name(StudyKind k) {
    return k == StudyKind::Convergence ? "convergence" : "local-error";
}

double row_t_final(const ConvergenceReport& r, const ConvergenceRow& row) {
    return r.kind == StudyKind::LocalError ? row.tau : r.t_final;
}

// JSON has no NaN/Infinity; those become null.
nlohmann::json jnum(double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

Format parse_format(std::string_view name) {
    std::string lower(name);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "csv") return Format::Csv;
    if (lower == "json") return Format::Json;
    throw ConfigError("unknown report format '" + std::string(name) + "' (csv or json)");
}

std::string to_csv(const ConvergenceReport& r) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& row : r.rows) {
        out += std::string(to_string(row.scheme)) + ',' + num(row.tau) + ',' +
               num(row.error_rel) + ',' + num(r.gamma) + ',' + std::to_string(r.n_points) +
               ',' + num(r.theta) + ',' + std::to_string(r.seed) + ',' +
               num(row_t_final(r, row)) + ',' + row.status + '\n';
    }
    return out;
}

std::string to_json(const ConvergenceReport& r) {
    using nlohmann::json;
    json rows = json::array();
    json diverged = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"scheme", std::string(to_string(row.scheme))},
                        {"tau", row.tau},
                        {"error_rel", jnum(row.error_rel)},
                        {"gamma", r.gamma},
                        {"n_points", r.n_points},
                        {"theta", jnum(r.theta)},
                        {"seed", r.seed},
                        {"t_final", row_t_final(r, row)},
                        {"status", row.status}});
        if (row.status != "ok") {
            diverged.push_back({{"scheme", std::string(to_string(row.scheme))},
                                {"tau", row.tau},
                                {"step", row.blowup_step ? json(*row.blowup_step) : json(nullptr)}});
        }
    }
    json fits = json::array();
    for (const auto& f : r.fits) {
        fits.push_back({{"scheme", std::string(to_string(f.scheme))},
                        {"fitted_order", f.estimate.slope},
                        {"fit_residual", f.estimate.residual},
                        {"points_used", f.estimate.points},
                        {"excluded_taus", f.excluded_taus}});
    }
    json doc = {{"kind", std::string(kind_name(r.kind))},
                {"metadata",
                 {{"n_points", r.n_points},
                  {"theta", jnum(r.theta)},
                  {"seed", r.seed},
                  {"gamma", r.gamma},
                  {"t_final", r.t_final},
                  {"ref_tau", r.ref_tau},
                  {"wall_seconds", r.wall_seconds}}},
                {"rows", rows},
                {"fits", fits},
                {"diverged", diverged}};
    return doc.dump(2) + '\n';
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

void emit_report(const ConvergenceReport& r, Format format,
                 const std::filesystem::path& path) {
    write_text(path, format == Format::Csv ? to_csv(r) : to_json(r));
}

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw IoError("report CSV header mismatch");
    }
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 9) throw IoError("report CSV row has wrong arity: " + line);
        CsvRow row;
        row.scheme = cells[0];
        row.tau = parse_double(cells[1]);
        row.error_rel = parse_double(cells[2]);
        row.gamma = parse_double(cells[3]);
        row.n_points = std::stoull(cells[4]);
        row.theta = parse_double(cells[5]);
        row.seed = std::stoull(cells[6]);
        row.t_final = parse_double(cells[7]);
        row.status = cells[8];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace elri::report
