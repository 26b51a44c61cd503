#include "cdirac/conformal.hpp"

#include "cdirac/errors.hpp"
#include "cdirac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>

namespace cdirac {

namespace {

double stable_sech(double v) {
    // 1/cosh(v) without overflowing for large |v|
    const double a = std::abs(v);
    const double e = std::exp(-a);
    return 2.0 * e / (1.0 + e * e);
}

// int_0^v cosh^n(u) du via the reduction
// int cosh^k = cosh^(k-1) sinh / k + (k-1)/k int cosh^(k-2)
double cosh_power_antiderivative(int n, double v) {
    if (n == 0) return v;
    const double s = std::sinh(v);
    if (n == 1) return s;
    const double c = std::cosh(v);
    double acc = (n % 2 == 0) ? v : s;
    double ck = (n % 2 == 0) ? c : c * c;  // cosh^(k-1) for the next k
    for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) {
        acc = ck * s / k + (k - 1.0) / k * acc;
        ck *= c * c;
    }
    return acc;
}

// int_{-inf}^{inf} sech^n: J_1 = pi, J_2 = 2, J_n = J_{n-2} (n-2)/(n-1)
double sech_power_line_integral(int n) {
    double j = (n % 2 == 1) ? std::numbers::pi : 2.0;
    for (int k = (n % 2 == 1) ? 3 : 4; k <= n; k += 2) {
        j *= (k - 2.0) / (k - 1.0);
    }
    return j;
}

std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

// Natural cubic spline through the tabulated samples.
struct ConformalFactor::Spline {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> m;  // second derivatives at the knots

    explicit Spline(std::vector<double> xs, std::vector<double> ys)
        : x(std::move(xs)), y(std::move(ys)) {
        const size_t n = x.size();
        m.assign(n, 0.0);
        if (n < 3) return;
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), sub(n, 0.0), sup(n, 0.0);
        for (size_t i = 1; i + 1 < n; ++i) {
            const double hl = x[i] - x[i - 1];
            const double hr = x[i + 1] - x[i];
            sub[i] = hl / 6.0;
            diag[i] = (hl + hr) / 3.0;
            sup[i] = hr / 6.0;
            rhs[i] = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl;
        }
        // Thomas solve on rows 1..n-2 (natural ends: m[0] = m[n-1] = 0)
        for (size_t i = 2; i + 1 < n; ++i) {
            const double w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (size_t i = n - 2; i >= 1; --i) {
            double v = rhs[i];
            if (i + 2 < n) v -= sup[i] * m[i + 1];
            m[i] = v / diag[i];
            if (i == 1) break;
        }
    }

    size_t segment(double t) const {
        auto it = std::upper_bound(x.begin(), x.end(), t);
        size_t i = static_cast<size_t>(it - x.begin());
        if (i == 0) i = 1;
        if (i >= x.size()) i = x.size() - 1;
        return i - 1;
    }

    Eval eval(double t) const {
        const size_t i = segment(t);
        const double h = x[i + 1] - x[i];
        const double a = x[i + 1] - t;
        const double b = t - x[i];
        const double cl = y[i] / h - m[i] * h / 6.0;
        const double cr = y[i + 1] / h - m[i + 1] * h / 6.0;
        Eval e;
        e.value = m[i] * a * a * a / (6.0 * h) + m[i + 1] * b * b * b / (6.0 * h) +
                  cl * a + cr * b;
        e.derivative = -m[i] * a * a / (2.0 * h) + m[i + 1] * b * b / (2.0 * h) - cl + cr;
        return e;
    }

    // exact integral of the interpolant over [x[i], t] inside segment i
    double segment_integral(size_t i, double t) const {
        const double h = x[i + 1] - x[i];
        const double a = x[i + 1] - t;
        const double b = t - x[i];
        const double cl = y[i] / h - m[i] * h / 6.0;
        const double cr = y[i + 1] / h - m[i + 1] * h / 6.0;
        return m[i] * (h * h * h * h - a * a * a * a) / (24.0 * h) +
               m[i + 1] * b * b * b * b / (24.0 * h) +
               cl * (h * h - a * a) / 2.0 + cr * b * b / 2.0;
    }

    double integral_from_zero(double t) const {
        const double lo = std::min(0.0, t);
        const double hi = std::max(0.0, t);
        const size_t s0 = segment(lo);
        const size_t s1 = segment(hi);
        double acc = -segment_integral(s0, lo);
        for (size_t i = s0; i < s1; ++i) acc += segment_integral(i, x[i + 1]);
        acc += segment_integral(s1, hi);
        return (t >= 0.0) ? acc : -acc;
    }
};

struct ConformalFactor::Cache {
    std::once_flag once;
    double reciprocal_integral = 0.0;
    std::exception_ptr error;
};

ConformalFactor ConformalFactor::polynomial_even(double omega, double c, int n) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("polynomial_even: leading coefficient must be finite and > 0");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument(
            "polynomial_even: constant term must be finite and > 0 (Omega must be nodeless)");
    }
    if (n < 1) throw std::invalid_argument("polynomial_even: n must be a positive integer");
    ConformalFactor f;
    f.family_ = PolynomialEven{omega, c, n};
    // int dx / (omega x^(2n) + c) = (c/omega)^(1/2n) / c * pi / (n sin(pi/2n))
    f.closed_form_ = std::pow(c / omega, 1.0 / (2.0 * n)) / c * std::numbers::pi /
                     (n * std::sin(std::numbers::pi / (2.0 * n)));
    f.cache_ = std::make_shared<Cache>();
    return f;
}

ConformalFactor ConformalFactor::cosh_power(double alpha, int n) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("cosh_power: alpha must be finite and > 0");
    }
    if (n < 1) throw std::invalid_argument("cosh_power: n must be a positive integer");
    ConformalFactor f;
    f.family_ = CoshPower{alpha, n};
    f.closed_form_ = sech_power_line_integral(n) / alpha;
    f.cache_ = std::make_shared<Cache>();
    return f;
}

ConformalFactor ConformalFactor::tabulated(std::vector<double> x, std::vector<double> values) {
    if (x.size() != values.size()) {
        throw std::invalid_argument("tabulated: x and values must have equal length");
    }
    if (x.size() < 4) {
        throw std::invalid_argument("tabulated: at least 4 samples required for cubic interpolation");
    }
    for (size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(values[i])) {
            throw std::invalid_argument("tabulated: samples must be finite");
        }
        if (i > 0 && !(x[i] > x[i - 1])) {
            throw std::invalid_argument("tabulated: x grid must be strictly increasing");
        }
        if (!(values[i] > 0.0)) {
            throw std::invalid_argument("tabulated: Omega samples must be strictly positive (nodeless)");
        }
    }
    ConformalFactor f;
    f.family_ = Tabulated{x, values};
    f.spline_ = std::make_shared<Spline>(std::move(x), std::move(values));
    f.cache_ = std::make_shared<Cache>();
    return f;
}

ConformalFactor ConformalFactor::with_closed_form_reciprocal_integral(double value) const {
    ConformalFactor f = *this;
    f.closed_form_ = value;
    f.cache_ = std::make_shared<Cache>();
    return f;
}

ConformalFactor::Eval ConformalFactor::evaluate(double x) const {
    if (const auto* p = std::get_if<PolynomialEven>(&family_)) {
        const double x2n1 = std::pow(x, 2 * p->n - 1);
        return {p->omega * x2n1 * x + p->c, 2.0 * p->n * p->omega * x2n1};
    }
    if (const auto* p = std::get_if<CoshPower>(&family_)) {
        const double c = std::cosh(p->alpha * x);
        const double s = std::sinh(p->alpha * x);
        const double cn1 = std::pow(c, p->n - 1);
        return {cn1 * c, p->n * p->alpha * cn1 * s};
    }
    const auto& tab = std::get<Tabulated>(family_);
    if (x < tab.x.front() || x > tab.x.back()) {
        throw OutOfHullError("tabulated conformal factor evaluated at x = " + format_number(x) +
                             " outside hull [" + format_number(tab.x.front()) + ", " +
                             format_number(tab.x.back()) + "]");
    }
    return spline_->eval(x);
}

double ConformalFactor::antiderivative(double x) const {
    if (const auto* p = std::get_if<PolynomialEven>(&family_)) {
        return p->omega * std::pow(x, 2 * p->n + 1) / (2 * p->n + 1) + p->c * x;
    }
    if (const auto* p = std::get_if<CoshPower>(&family_)) {
        return cosh_power_antiderivative(p->n, p->alpha * x) / p->alpha;
    }
    const auto& tab = std::get<Tabulated>(family_);
    const double lo = std::min(0.0, x);
    const double hi = std::max(0.0, x);
    if (lo < tab.x.front() || hi > tab.x.back()) {
        throw OutOfHullError("antiderivative needs [0, x] inside the tabulated hull");
    }
    return spline_->integral_from_zero(x);
}

double ConformalFactor::reciprocal_integral() const {
    std::call_once(cache_->once, [this] {
        try {
            if (std::holds_alternative<Tabulated>(family_)) {
                throw DivergenceError(
                    "reciprocal integral of a tabulated factor: Omega is only known on a "
                    "finite hull and is bounded there, so int dx/Omega over the real line "
                    "does not converge");
            }
            auto reciprocal = [this](double x) -> double {
                if (const auto* p = std::get_if<CoshPower>(&family_)) {
                    return std::pow(stable_sech(p->alpha * x), p->n);
                }
                const auto& p = std::get<PolynomialEven>(family_);
                return 1.0 / (p.omega * std::pow(x, 2 * p.n) + p.c);
            };
            const auto res = quad::integrate_real_line(reciprocal);
            if (closed_form_) {
                const double cf = *closed_form_;
                if (std::abs(res.value - cf) > 1e-10 * std::abs(cf)) {
                    throw DomainError("reciprocal integral quadrature " + format_number(res.value) +
                                      " disagrees with closed form " + format_number(cf));
                }
            }
            cache_->reciprocal_integral = res.value;
        } catch (...) {
            cache_->error = std::current_exception();
        }
    });
    if (cache_->error) std::rethrow_exception(cache_->error);
    return cache_->reciprocal_integral;
}

const ConformalFactor::PolynomialEven* ConformalFactor::as_polynomial_even() const {
    return std::get_if<PolynomialEven>(&family_);
}
const ConformalFactor::CoshPower* ConformalFactor::as_cosh_power() const {
    return std::get_if<CoshPower>(&family_);
}
const ConformalFactor::Tabulated* ConformalFactor::as_tabulated() const {
    return std::get_if<Tabulated>(&family_);
}

std::string ConformalFactor::describe() const {
    if (const auto* p = std::get_if<PolynomialEven>(&family_)) {
        std::string head = (p->omega == 1.0) ? "" : format_number(p->omega) + "*";
        return head + "x^" + std::to_string(2 * p->n) + "+" + format_number(p->c);
    }
    if (const auto* p = std::get_if<CoshPower>(&family_)) {
        std::string arg = (p->alpha == 1.0) ? "x" : format_number(p->alpha) + "*x";
        if (p->n == 1) return "cosh(" + arg + ")";
        return "cosh^" + std::to_string(p->n) + "(" + arg + ")";
    }
    const auto& tab = std::get<Tabulated>(family_);
    return "tabulated[" + std::to_string(tab.x.size()) + " samples on (" +
           format_number(tab.x.front()) + ", " + format_number(tab.x.back()) + ")]";
}

const std::vector<ConformalFactor>& registry() {
    static const std::vector<ConformalFactor> factors = {
        ConformalFactor::polynomial_even(1.0, 1.0, 1),
        ConformalFactor::polynomial_even(1.0, 1.0, 2),
        ConformalFactor::polynomial_even(1.0, 1.0, 3),
        ConformalFactor::cosh_power(1.0, 1),
        ConformalFactor::cosh_power(1.0, 2),
        ConformalFactor::cosh_power(1.0, 3),
    };
    return factors;
}

}  // namespace cdirac
