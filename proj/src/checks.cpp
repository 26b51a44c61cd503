#include "cdirac/checks.hpp"

#include "cdirac/discrete.hpp"
#include "cdirac/errors.hpp"
#include "cdirac/geometry.hpp"
#include "cdirac/io.hpp"
#include "cdirac/quadrature.hpp"
#include "cdirac/zeromode.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace cdirac::checks {

namespace {

constexpr double kPi = std::numbers::pi;

struct Sample {
    std::string label;
    double value;
};

std::string join_details(const std::vector<Sample>& samples) {
    std::ostringstream out;
    for (size_t i = 0; i < samples.size(); ++i) {
        if (i) out << "; ";
        out << samples[i].label << " = " << io::format_double(samples[i].value);
    }
    return out.str();
}

CheckResult timed(CheckResult base, const std::function<void(CheckResult&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
        body(base);
    } catch (const std::exception& e) {
        base.status = "fail";
        base.details = std::string("exception: ") + e.what();
    }
    base.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return base;
}

void conclude_upper_bound(CheckResult& r, double measured, double tolerance) {
    r.measured = measured;
    r.tolerance = tolerance;
    r.relation = "<=";
    r.status = measured <= tolerance ? "pass" : "fail";
}

/// Closed-form constants for Omega = x^(2n) + 1 (case 1) and cosh^n x (case 2).
double closed_form_norm_constant(bool cosh_family, int n, double mass, double k_v, double length) {
    const double base = (k_v - mass) / (length * k_v);
    if (!cosh_family) {
        switch (n) {
            case 1: return std::sqrt(base / (2.0 * kPi));
            case 2: return std::sqrt(base / (std::sqrt(2.0) * kPi));
            case 3: return std::sqrt(3.0 * base / (4.0 * kPi));
        }
    } else {
        switch (n) {
            case 1: return std::sqrt(base / (2.0 * kPi));
            case 2: return std::sqrt(base / 4.0);
            case 3: return std::sqrt(base / kPi);
        }
    }
    throw std::invalid_argument("closed-form norm constants cover n = 1, 2, 3 only");
}

CheckResult normalization_family(bool cosh_family, const SuiteOptions& opts) {
    CheckResult r;
    r.name = cosh_family ? "normalization_case2_cosh" : "normalization_case1_polynomial";
    r.provenance = "quadrature-backed normalize vs closed-form constants";
    r.runtime_budget_seconds = 5.0;
    return timed(r, [cosh_family, &opts](CheckResult& res) {
        std::mt19937 rng(cosh_family ? 7321u : 7320u);
        std::uniform_real_distribution<double> mass_draw(0.0, 2.0);
        std::uniform_real_distribution<double> gap_draw(0.3, 3.0);
        std::uniform_real_distribution<double> length_draw(1.0, 20.0);
        std::uniform_real_distribution<double> ky_frac(-0.95, 0.95);

        std::vector<Sample> worst_samples;
        double worst = 0.0;
        for (int n = 1; n <= 3; ++n) {
            const ConformalFactor omega = cosh_family ? ConformalFactor::cosh_power(1.0, n)
                                                      : ConformalFactor::polynomial_even(1.0, 1.0, n);
            std::vector<PhysicalParams> draws;
            draws.push_back({1.5, 2.5, 0.0, 2.0 * kPi, +1});
            for (int d = 0; d < 20; ++d) {
                PhysicalParams p;
                p.mass = mass_draw(rng);
                p.k_v = p.mass + gap_draw(rng);
                p.length = length_draw(rng);
                p.k_y = ky_frac(rng) * std::sqrt(p.k_v * p.k_v - p.mass * p.mass);
                p.sigma = (d % 2 == 0) ? +1 : -1;
                draws.push_back(p);
            }
            for (const auto& p : draws) {
                const double measured_n = normalize(p, omega);
                const double expected = closed_form_norm_constant(cosh_family, n, p.mass, p.k_v, p.length);
                const double rel = std::abs(measured_n - expected) / expected;
                if (rel > worst) {
                    worst = rel;
                    worst_samples = {{"n", static_cast<double>(n)},
                                     {"M", p.mass},
                                     {"k_v", p.k_v},
                                     {"L", p.length},
                                     {"N_quadrature", measured_n},
                                     {"N_closed_form", expected}};
                }
            }
        }
        res.details = "worst draw: " + join_details(worst_samples);
        conclude_upper_bound(res, worst, 1e-9 * opts.tolerance_scale);
    });
}

}  // namespace

CheckResult normalization_case1_polynomial(const SuiteOptions& opts) {
    return normalization_family(false, opts);
}

CheckResult normalization_case2_cosh(const SuiteOptions& opts) {
    return normalization_family(true, opts);
}

CheckResult degeneracy_enumeration(const SuiteOptions& opts) {
    CheckResult r;
    r.name = "degeneracy_enumeration";
    r.provenance = "floor formula vs brute-force mode enumeration";
    r.runtime_budget_seconds = 1.0;
    return timed(r, [&opts](CheckResult& res) {
        auto enumerate = [](const PhysicalParams& p) {
            const double bound = std::abs(p.k_v) + std::abs(p.mass) + 1.0;
            const int m_max = static_cast<int>(std::ceil(p.length * bound / (2.0 * kPi))) + 2;
            int count = 0;
            for (int m = -m_max; m <= m_max; ++m) {
                PhysicalParams q = p;
                q.k_y = 2.0 * kPi * m / p.length;
                if (admissible(q)) ++count;
            }
            return count;
        };

        std::mt19937 rng(5150u);
        std::uniform_real_distribution<double> mass_draw(0.0, 3.0);
        std::uniform_real_distribution<double> gap_draw(0.01, 5.0);
        std::uniform_real_distribution<double> length_draw(0.5, 30.0);

        std::vector<PhysicalParams> cases;
        for (int d = 0; d < 500; ++d) {
            PhysicalParams p;
            p.mass = mass_draw(rng);
            p.k_v = p.mass + gap_draw(rng);
            p.length = length_draw(rng);
            cases.push_back(p);
        }
        // boundary case: L sqrt(k_v^2 - M^2) / 2pi = 2 exactly
        cases.push_back({0.0, 1.0, 0.0, 4.0 * kPi, +1});
        // degenerate edge: only m = 0 survives
        cases.push_back({1.25, 1.25, 0.0, 17.0, +1});

        int mismatches = 0;
        std::string first_mismatch;
        for (const auto& p : cases) {
            const int formula = degeneracy(p).count;
            const int enumerated = enumerate(p);
            if (formula != enumerated) {
                ++mismatches;
                if (first_mismatch.empty()) {
                    first_mismatch = "M=" + io::format_double(p.mass) +
                                     " k_v=" + io::format_double(p.k_v) +
                                     " L=" + io::format_double(p.length) + " formula=" +
                                     std::to_string(formula) + " enum=" + std::to_string(enumerated);
                }
            }
        }
        const PhysicalParams boundary{0.0, 1.0, 0.0, 4.0 * kPi, +1};
        res.details = "cases = 502, boundary degeneracy = " +
                      std::to_string(degeneracy(boundary).count) +
                      (first_mismatch.empty() ? "" : "; first mismatch: " + first_mismatch);
        conclude_upper_bound(res, static_cast<double>(mismatches), 0.0);
        (void)opts;
    });
}

CheckResult eigenpair_residual(const SuiteOptions& opts) {
    CheckResult r;
    r.name = "eigenpair_residual";
    r.provenance = "explicit 2x2 multiplication oracle";
    r.runtime_budget_seconds = 1.0;
    return timed(r, [&opts](CheckResult& res) {
        std::mt19937 rng(90210u);
        std::uniform_real_distribution<double> mass_draw(0.0, 2.0);
        std::uniform_real_distribution<double> gap_draw(0.25, 2.5);
        std::uniform_real_distribution<double> ky_draw(-2.5, 2.5);

        double worst = 0.0;
        int real_branch = 0, imaginary_branch = 0;
        for (int d = 0; d < 1000; ++d) {
            PhysicalParams p;
            p.mass = mass_draw(rng);
            p.k_v = p.mass + ((d % 2 == 0) ? gap_draw(rng) : -gap_draw(rng));
            p.k_y = ky_draw(rng);
            p.sigma = (d % 4 < 2) ? +1 : -1;
            const auto [lambda, chi] = spinor_eigenpair(p);
            if (lambda.imag() == 0.0) ++real_branch; else ++imaginary_branch;
            const Eigen::Matrix2cd a = reduced_coefficient_matrix(p);
            worst = std::max(worst, (a * chi - lambda * chi).cwiseAbs().maxCoeff());
        }
        res.details = "real-branch draws = " + std::to_string(real_branch) +
                      ", imaginary-branch draws = " + std::to_string(imaginary_branch);
        conclude_upper_bound(res, worst, 1e-13 * opts.tolerance_scale);
        if (real_branch == 0 || imaginary_branch == 0) {
            res.status = "fail";
            res.details += "; draw design failed to cover both branches";
        }
    });
}

CheckResult geometry_identities(const SuiteOptions& opts) {
    CheckResult r;
    r.name = "geometry_identities";
    r.provenance = "closed forms vs finite-difference oracles; worst violation over its tolerance";
    r.runtime_budget_seconds = 2.0;
    return timed(r, [&opts](CheckResult& res) {
        std::mt19937 rng(31415u);
        std::uniform_real_distribution<double> x_draw(-10.0, 10.0);

        double worst_ratio = 0.0;
        std::vector<Sample> worst_parts;
        auto fold = [&](const char* label, double violation, double base_tol) {
            const double tol = base_tol * opts.tolerance_scale;
            const double ratio = (tol > 0.0) ? violation / tol
                                             : (violation == 0.0 ? 0.0
                                                                 : std::numeric_limits<double>::infinity());
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                worst_parts = {{label, violation}, {"tolerance", tol}};
            }
        };

        for (const auto& omega : registry()) {
            for (int i = 0; i < 100; ++i) {
                const double x = x_draw(rng);
                const GeometryBundle bundle = build_geometry(omega, x);
                const double h = 1e-6 * std::max(1.0, std::abs(x));

                fold("christoffel_fd_deviation",
                     christoffel_oracle(omega, x, h).max_abs_difference(bundle.christoffels),
                     1e-7);
                fold("spin_connection_fd_deviation",
                     spin_connection_oracle(omega, x, h).max_abs_difference(bundle.spin_connection),
                     1e-7);
                fold("vielbein_metric_reconstruction", vielbein_metric_violation(bundle), 1e-12);
                fold("clifford_curved", verify_clifford(bundle), 1e-12);
                fold("clifford_flat", verify_flat_clifford(bundle), 1e-12);
                fold("spin_connection_antisymmetry",
                     spin_connection_antisymmetry_violation(bundle), 1e-12);

                const auto general = spinor_connection_from(bundle.spin_connection);
                double gamma_dev = 0.0;
                for (int mu = 0; mu < 3; ++mu) {
                    gamma_dev = std::max(
                        gamma_dev,
                        (general[mu] - bundle.spinor_connection[mu]).cwiseAbs().maxCoeff());
                }
                fold("spinor_connection_general_vs_closed", gamma_dev, 1e-12);
            }
        }
        res.details = "worst margin: " + join_details(worst_parts);
        conclude_upper_bound(res, worst_ratio, 1.0);
    });
}

CheckResult ode_residual_convergence(const SuiteOptions& opts) {
    CheckResult r;
    r.name = "ode_residual_convergence";
    r.provenance = "second-order convergence of the E=0 finite-difference residual";
    r.runtime_budget_seconds = 30.0;
    return timed(r, [&opts](CheckResult& res) {
        struct Case {
            ConformalFactor omega;
            PhysicalParams params;
            double x_half;
            int coarse_n;
        };
        const std::vector<Case> cases = {
            {ConformalFactor::polynomial_even(1.0, 1.0, 1), {1.5, 2.5, 0.0, 2.0 * kPi, +1}, 5.0, 1201},
            {ConformalFactor::polynomial_even(1.0, 1.0, 1), {0.0, 1.0, 0.0, 2.0 * kPi, +1}, 5.0, 1201},
            {ConformalFactor::cosh_power(1.0, 1), {1.5, 2.5, 0.0, 2.0 * kPi, +1}, 4.0, 1001},
            {ConformalFactor::cosh_power(1.0, 1), {0.0, 1.0, 0.0, 2.0 * kPi, +1}, 4.0, 1001},
        };

        double worst_deviation = 0.0;
        std::vector<Sample> detail;
        for (const auto& c : cases) {
            const ZeroMode mode = build_zero_mode(c.params, c.omega);
            double residuals[3];
            for (int level = 0; level < 3; ++level) {
                const int n = (c.coarse_n - 1) * (1 << level) + 1;
                residuals[level] =
                    residual(c.params, c.omega, Grid(-c.x_half, c.x_half, n), mode);
            }
            const double ratio01 = residuals[0] / residuals[1];
            const double ratio12 = residuals[1] / residuals[2];
            worst_deviation = std::max({worst_deviation, std::abs(ratio01 - 4.0),
                                        std::abs(ratio12 - 4.0)});
            detail.push_back({c.omega.describe() + " M=" + io::format_double(c.params.mass) +
                                  " ratio(h,h/2)",
                              ratio01});
            detail.push_back({c.omega.describe() + " M=" + io::format_double(c.params.mass) +
                                  " ratio(h/2,h/4)",
                              ratio12});
        }
        res.details = join_details(detail);
        conclude_upper_bound(res, worst_deviation, 0.5 * opts.tolerance_scale);
    });
}

CheckResult kernel_detection(const SuiteOptions& opts) {
    CheckResult r;
    r.name = "kernel_detection";
    r.provenance = "shift-invert eigensolve on the truncated Dirichlet operator (soft check)";
    r.runtime_budget_seconds = 60.0;
    return timed(r, [&opts](CheckResult& res) {
        const ConformalFactor omega = ConformalFactor::cosh_power(1.0, 1);
        const Grid grid(-8.0, 8.0, 2001);

        auto smallest = [&](double k_v) {
            PhysicalParams p{1.5, k_v, 0.0, 2.0 * kPi, +1};
            const auto eigen =
                near_zero_eigen(assemble(p, omega, grid, BoundaryCondition::Dirichlet), 4);
            return std::abs(eigen.front());
        };

        const double admissible_min = smallest(2.5);
        const double control_min = smallest(0.5);
        const double ratio = control_min / admissible_min;

        res.details = join_details({{"min_abs_eigen_admissible", admissible_min},
                                    {"min_abs_eigen_inadmissible_control", control_min},
                                    {"separation_ratio", ratio}});
        // threshold frozen by the truncation study; not subject to tolerance_scale
        res.measured = ratio;
        res.tolerance = 10.0;
        res.relation = ">=";
        res.status = ratio >= 10.0 ? "pass" : "fail";
        (void)opts;
    });
}

CheckResult density_profiles(const SuiteOptions& opts) {
    CheckResult r;
    r.name = "density_profiles";
    r.provenance = "P(0) closed forms, parity, positivity, trapezoid unit mass";
    r.runtime_budget_seconds = 5.0;
    return timed(r, [&opts](CheckResult& res) {
        const PhysicalParams params{1.5, 2.5, 0.0, 2.0 * kPi, +1};
        const double expected_p0[6] = {1.0 / kPi,          std::sqrt(2.0) / kPi,
                                       3.0 / (2.0 * kPi),  1.0 / kPi,
                                       0.5,                2.0 / kPi};

        double worst_ratio = 0.0;
        std::vector<Sample> worst_parts;
        auto fold = [&](const std::string& label, double violation, double base_tol) {
            const double tol = base_tol * opts.tolerance_scale;
            const double ratio = (tol > 0.0) ? violation / tol
                                             : (violation == 0.0 ? 0.0
                                                                 : std::numeric_limits<double>::infinity());
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                worst_parts = {{label, violation}, {"tolerance", tol}};
            }
        };

        const auto& factors = registry();
        for (size_t f = 0; f < factors.size(); ++f) {
            const ConformalFactor& omega = factors[f];
            const std::string tag = omega.describe();

            const double p0 = probability_density(params, omega, 0.0);
            fold(tag + " P(0) relative error", std::abs(p0 - expected_p0[f]) / expected_p0[f],
                 1e-9);

            double parity = 0.0, negativity = 0.0;
            for (int i = 1; i <= 64; ++i) {
                const double x = 0.125 * i;
                const double plus = probability_density(params, omega, x);
                const double minus = probability_density(params, omega, -x);
                parity = std::max(parity, std::abs(plus - minus) / plus);
                negativity = std::max(negativity, std::max(0.0, -plus));
            }
            fold(tag + " parity violation", parity, 1e-12);
            fold(tag + " negativity", negativity, 0.0);

            // trapezoid over [-40, 40] plus tan-substituted tails
            const int n = 16001;
            const double a = 40.0, h = 2.0 * a / (n - 1);
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                const double x = -a + h * i;
                const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
                total += weight * probability_density(params, omega, x);
            }
            total *= h;
            auto tail = [&](double sign) {
                return quad::integrate(
                           [&](double theta) {
                               const double c = std::cos(theta);
                               return probability_density(params, omega, sign * std::tan(theta)) /
                                      (c * c);
                           },
                           std::atan(a), std::nextafter(std::asin(1.0), 0.0),
                           {1e-13, 1e-15, 2000})
                    .value;
            };
            total += tail(1.0) + tail(-1.0);
            fold(tag + " unit-mass defect", std::abs(total - 1.0), 1e-6);
        }
        res.details = "worst margin: " + join_details(worst_parts);
        conclude_upper_bound(res, worst_ratio, 1.0);
    });
}

VerificationReport run_all(const SuiteOptions& opts) {
    VerificationReport report;
    const auto start = std::chrono::steady_clock::now();
    report.checks = {normalization_case1_polynomial(opts),
                     normalization_case2_cosh(opts),
                     degeneracy_enumeration(opts),
                     eigenpair_residual(opts),
                     geometry_identities(opts),
                     ode_residual_convergence(opts),
                     kernel_detection(opts),
                     density_profiles(opts)};
    report.total_runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

CheckResult config_zero_mode(const RunConfig& config) {
    CheckResult r;
    r.name = "config_zero_mode";
    r.provenance = "residual convergence of the configured mode on nested grids";
    r.runtime_budget_seconds = 60.0;
    return timed(r, [&config](CheckResult& res) {
        const PhysicalParams& p = config.params;
        if (p.mass == p.k_v) {
            res.status = "skipped-degenerate";
            res.details = "M = k_v: eigenvector representation and normalization degenerate";
            return;
        }
        if (!admissible(p)) {
            res.status = "skipped-inadmissible";
            res.details = "k_v^2 < k_y^2 + M^2: no normalizable zero mode to certify";
            return;
        }
        std::optional<ZeroMode> mode;
        try {
            mode.emplace(build_zero_mode(p, config.omega));
        } catch (const DivergenceError& e) {
            res.status = "skipped-divergent-measure";
            res.details = e.what();
            return;
        }

        Grid coarse = config.grid.value_or(Grid(-4.0, 4.0, 2001));
        const double lambda_mag = std::abs(mode->lambda());
        double omega_max = 0.0;
        for (double x : coarse.nodes()) omega_max = std::max(omega_max, config.omega.value(x));
        if (lambda_mag * omega_max > 0.0) {
            // refine until h |lambda| Omega_max <= 0.1, capped at desk scale
            const double span = coarse.x_max - coarse.x_min;
            const double h_needed = 0.1 / (lambda_mag * omega_max);
            int n = std::max(coarse.n_points,
                             static_cast<int>(std::ceil(span / h_needed)) + 1);
            if (n % 2 == 0) ++n;
            if (n > 400001) {
                res.status = "skipped-unresolvable";
                res.details = "resolving h |lambda| max(Omega) <= 0.1 needs " + std::to_string(n) +
                              " nodes; shrink the grid domain";
                return;
            }
            coarse = Grid(coarse.x_min, coarse.x_max, n);
        }

        const double r1 = residual(p, config.omega, coarse, *mode);
        const Grid fine(coarse.x_min, coarse.x_max, 2 * (coarse.n_points - 1) + 1);
        const double r2 = residual(p, config.omega, fine, *mode);

        if (r1 < 1e-10) {  // lambda = 0 boundary: the sampled mode is constant
            res.details = "residuals " + io::format_double(r1) + " / " + io::format_double(r2);
            conclude_upper_bound(res, r1, 1e-10);
            return;
        }
        const double ratio = r1 / r2;
        res.details = "residuals " + io::format_double(r1) + " -> " + io::format_double(r2) +
                      ", ratio " + io::format_double(ratio);
        res.measured = ratio;
        res.tolerance = 3.0;
        res.relation = ">=";
        res.status = (ratio >= 3.0 && ratio <= 5.0) ? "pass" : "fail";
    });
}

}  // namespace cdirac::checks
