#pragma once

#include <string>
#include <vector>

namespace cdirac {

/// Outcome of one verification check. `measured` is compared against
/// `tolerance` with `relation` ("<=" or ">="); checks that aggregate several
/// quantities report the worst margin ratio against tolerance 1.
struct CheckResult {
    std::string name;
    std::string status;  // "pass", "fail", or "skipped-<reason>"
    double measured = 0.0;
    double tolerance = 0.0;
    std::string relation = "<=";
    std::string provenance;
    std::string details;
    double runtime_seconds = 0.0;
    double runtime_budget_seconds = 0.0;

    bool passed() const { return status == "pass"; }
    bool failed() const { return status == "fail"; }
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    double total_runtime_seconds = 0.0;

    bool all_passed() const;

    /// {"checks": [...], "metadata": {...}} - the metadata block holds the
    /// timings so the check data itself stays deterministic.
    std::string to_json() const;

    /// One "PASS name measured=... tol=..." line per check.
    std::string to_text() const;
};

}  // namespace cdirac
