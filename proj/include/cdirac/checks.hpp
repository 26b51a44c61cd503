#pragma once

#include "cdirac/config.hpp"
#include "cdirac/report.hpp"

namespace cdirac::checks {

struct SuiteOptions {
    /// Multiplies every "<=" tolerance; 0 demands exact agreement.
    double tolerance_scale = 1.0;
};

// The eight pinned verification checks, in criterion order.
CheckResult normalization_case1_polynomial(const SuiteOptions& opts = {});
CheckResult normalization_case2_cosh(const SuiteOptions& opts = {});
CheckResult degeneracy_enumeration(const SuiteOptions& opts = {});
CheckResult eigenpair_residual(const SuiteOptions& opts = {});
CheckResult geometry_identities(const SuiteOptions& opts = {});
CheckResult ode_residual_convergence(const SuiteOptions& opts = {});
CheckResult kernel_detection(const SuiteOptions& opts = {});
CheckResult density_profiles(const SuiteOptions& opts = {});

/// All eight checks in order, each timed against its runtime budget.
VerificationReport run_all(const SuiteOptions& opts = {});

/// Extra check run by the CLI verify command: certifies the configured
/// (omega, params) zero mode by residual convergence on nested grids.
/// Returns a skipped result when the configuration is degenerate (M = k_v),
/// inadmissible, or carries a divergent measure.
CheckResult config_zero_mode(const RunConfig& config);

}  // namespace cdirac::checks
