#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "elri/study.hpp"

namespace elri::report {

enum class Format { Csv, Json };

Format parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "scheme,tau,error_rel,gamma,n_points,theta,seed,t_final,status";

/// One line per row under kCsvHeader. Numbers use 17 significant digits.
std::string to_csv(const ConvergenceReport& r);

/// {"kind", "metadata", "rows", "fits", "diverged"}; rows carry the CSV
/// columns, fits carry fitted_order, fit_residual, points_used and
/// excluded_taus.
std::string to_json(const ConvergenceReport& r);

/// Writes to_csv or to_json to path. Throws IoError naming the path.
void emit_report(const ConvergenceReport& r, Format format,
                 const std::filesystem::path& path);

struct CsvRow {
    std::string scheme;
    double tau = 0.0;
    double error_rel = 0.0;
    double gamma = 0.0;
    std::size_t n_points = 0;
    double theta = 0.0;
    std::uint64_t seed = 0;
    double t_final = 0.0;
    std::string status;
};

/// Parses text produced by to_csv. Throws IoError on malformed input.
std::vector<CsvRow> parse_csv(std::string_view text);

/// Writes text to path with IoError on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace elri::report
