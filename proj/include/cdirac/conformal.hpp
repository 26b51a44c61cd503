#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cdirac {

/// Conformal factor Omega(x) multiplying the (t,x) block of the metric.
/// Instances are immutable; all evaluations are pure and thread-safe.
///
/// The two analytic families are nodeless and grow without bound, so the
/// reciprocal integral I = int dx / Omega over the real line is finite.
/// Tabulated factors are second class: they are only defined on their hull
/// and make no growth claim, so normalization queries may reject them.
class ConformalFactor {
public:
    struct PolynomialEven {
        double omega;  // leading coefficient, > 0
        double c;      // constant offset, > 0
        int n;         // half-degree, >= 1: Omega = omega * x^(2n) + c
    };
    struct CoshPower {
        double alpha;  // > 0
        int n;         // >= 1: Omega = cosh^n(alpha x)
    };
    struct Tabulated {
        std::vector<double> x;       // strictly increasing
        std::vector<double> values;  // strictly positive samples
    };

    struct Eval {
        double value;
        double derivative;
    };

    static ConformalFactor polynomial_even(double omega, double c, int n);
    static ConformalFactor cosh_power(double alpha, int n);
    static ConformalFactor tabulated(std::vector<double> x, std::vector<double> values);

    /// Copy with an externally supplied closed form for int dx / Omega.
    /// reciprocal_integral() cross-checks quadrature against it.
    ConformalFactor with_closed_form_reciprocal_integral(double value) const;

    /// (Omega(x), Omega'(x)). Throws OutOfHullError for tabulated factors
    /// evaluated outside their grid hull.
    Eval evaluate(double x) const;
    double value(double x) const { return evaluate(x).value; }

    /// W(x) = int_0^x Omega(t) dt, with W(0) = 0.
    double antiderivative(double x) const;

    /// I = int_{-inf}^{inf} dx / Omega(x) by adaptive quadrature with
    /// tan-substituted tails. When a closed form is attached the quadrature
    /// must agree with it to 1e-10 relative or a DomainError is raised.
    /// Tabulated factors throw DivergenceError (tail behavior unknown).
    /// The result is cached; repeated calls are cheap.
    double reciprocal_integral() const;

    std::optional<double> closed_form_reciprocal_integral() const { return closed_form_; }

    const PolynomialEven* as_polynomial_even() const;
    const CoshPower* as_cosh_power() const;
    const Tabulated* as_tabulated() const;

    /// Short human-readable form, e.g. "x^4+1" or "cosh^2(x)".
    std::string describe() const;

private:
    struct Spline;  // natural cubic interpolant for tabulated factors
    struct Cache;

    ConformalFactor() = default;

    std::variant<PolynomialEven, CoshPower, Tabulated> family_;
    std::optional<double> closed_form_;
    std::shared_ptr<const Spline> spline_;
    std::shared_ptr<Cache> cache_;
};

/// The six factors the golden results are pinned to:
/// x^2+1, x^4+1, x^6+1, cosh x, cosh^2 x, cosh^3 x.
const std::vector<ConformalFactor>& registry();

}  // namespace cdirac
