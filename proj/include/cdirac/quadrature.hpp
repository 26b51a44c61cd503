#pragma once

#include <functional>

namespace cdirac::quad {

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (G7, K15) integration on a finite interval.
/// Throws QuadratureError if the interval budget is exhausted before the
/// estimated error drops below max(abs_tol, rel_tol * |integral|).
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

/// Integral of f over the whole real line. The core [-core_halfwidth, core_halfwidth]
/// is integrated directly; each tail is mapped through x = tan(theta) so the
/// polynomially decaying integrands of the conformal families stay smooth.
/// Throws DivergenceError when the tail contributions fail to settle.
Result integrate_real_line(const std::function<double(double)>& f,
                           const Options& opts = {}, double core_halfwidth = 10.0);

}  // namespace cdirac::quad
