#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace elri {

struct CheckResult {
    std::string check_name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    /// Random fields per grid size in the oracle-equivalence check.
    std::size_t fields_per_grid = 50;
    /// Include the ELRI2 vs IF-RK4 reference cross-check (about a second).
    bool include_reference = true;
};

/// Operator identities, resonance algebra, integration-by-parts identities,
/// F_n closed form, scheme-vs-embedded-form equivalence, mean conservation
/// and the reference cross-check.
std::vector<CheckResult> run_verification(const VerifyOptions& opt = {});

/// JSON array of {check_name, residual, tolerance, pass}.
std::string verification_json(const std::vector<CheckResult>& results);

}  // namespace elri
