#include "cdirac/zeromode.hpp"

#include "cdirac/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cdirac {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::string describe_inequality(const PhysicalParams& p) {
    return "k_v^2 = " + std::to_string(p.k_v * p.k_v) + " < k_y^2 + M^2 = " +
           std::to_string(p.k_y * p.k_y + p.mass * p.mass);
}

}  // namespace

void PhysicalParams::validate() const {
    if (!std::isfinite(mass) || mass < 0.0) {
        throw std::invalid_argument("params: mass must be finite and >= 0");
    }
    if (!std::isfinite(k_v) || !std::isfinite(k_y)) {
        throw std::invalid_argument("params: k_v and k_y must be finite");
    }
    if (!std::isfinite(length) || length <= 0.0) {
        throw std::invalid_argument("params: strip length L must be finite and > 0");
    }
    if (sigma != 1 && sigma != -1) {
        throw std::invalid_argument("params: sigma must be +1 or -1");
    }
}

Eigen::Matrix2cd reduced_coefficient_matrix(const PhysicalParams& p) {
    Eigen::Matrix2cd a;
    a << p.k_y, kI * (p.k_v - p.mass), kI * (p.k_v + p.mass), -p.k_y;
    return a;
}

SpinorEigenpair spinor_eigenpair(const PhysicalParams& p) {
    p.validate();
    const double disc = p.k_y * p.k_y + p.mass * p.mass - p.k_v * p.k_v;
    std::complex<double> lambda = (disc >= 0.0)
                                      ? std::complex<double>(std::sqrt(disc), 0.0)
                                      : std::complex<double>(0.0, std::sqrt(-disc));
    lambda *= static_cast<double>(p.sigma);

    Vector2c chi;
    if (p.mass != p.k_v) {
        chi << 1.0, kI * (lambda - p.k_y) / (p.mass - p.k_v);
    } else if (p.mass + p.k_v != 0.0) {
        // first row of (A - lambda) degenerates; use the second row instead
        chi << -kI * (p.k_y + lambda) / (p.mass + p.k_v), 1.0;
    } else {
        throw DegenerateParamsError(
            "spinor eigenvector undefined: M = k_v = 0 leaves both component "
            "relations singular (k_y = lambda)");
    }

    // cheap self-check by explicit 2x2 multiplication
    const Eigen::Matrix2cd a = reduced_coefficient_matrix(p);
    const double scale =
        a.cwiseAbs().maxCoeff() * chi.cwiseAbs().maxCoeff() + std::abs(lambda);
    const double resid = (a * chi - lambda * chi).cwiseAbs().maxCoeff();
    if (resid > 1e-12 * std::max(1.0, scale)) {
        throw std::logic_error("spinor eigenpair residual " + std::to_string(resid) +
                               " exceeds tolerance");
    }
    return {lambda, chi};
}

bool admissible(const PhysicalParams& p) {
    p.validate();
    return p.k_v * p.k_v >= p.k_y * p.k_y + p.mass * p.mass;
}

KyRange ky_range(const PhysicalParams& p) {
    p.validate();
    const double disc = p.k_v * p.k_v - p.mass * p.mass;
    if (disc < 0.0) {
        throw EmptyRangeError("no zero modes for any k_y: k_v^2 = " +
                              std::to_string(p.k_v * p.k_v) + " < M^2 = " +
                              std::to_string(p.mass * p.mass));
    }
    const double bound = std::sqrt(disc);
    return {-bound, bound};
}

DegeneracyCount degeneracy(const PhysicalParams& p) {
    p.validate();
    const double disc = p.k_v * p.k_v - p.mass * p.mass;
    if (disc < 0.0) return {0, true};
    const double half_count = p.length * std::sqrt(disc) / (2.0 * std::numbers::pi);
    return {2 * static_cast<int>(std::floor(half_count)) + 1, false};
}

double chi_norm_squared(const PhysicalParams& p) {
    return spinor_eigenpair(p).chi.squaredNorm();
}

double normalize(const PhysicalParams& p, const ConformalFactor& omega) {
    p.validate();
    if (p.k_v <= p.mass) {
        throw DegenerateParamsError(
            "normalization undefined for k_v <= M (k_v = " + std::to_string(p.k_v) +
            ", M = " + std::to_string(p.mass) + "): |chi|^2 = 2 k_v/(k_v - M) degenerates");
    }
    if (!admissible(p)) {
        throw InadmissibleError("no normalizable zero mode: " + describe_inequality(p));
    }
    const double chi_sq = chi_norm_squared(p);
    const double measure = omega.reciprocal_integral();
    return 1.0 / std::sqrt(chi_sq * p.length * measure);
}

double probability_density(const PhysicalParams& p, const ConformalFactor& omega, double x) {
    p.validate();
    if (!admissible(p)) {
        throw InadmissibleError("no normalizable zero mode: " + describe_inequality(p));
    }
    return 1.0 / (omega.value(x) * omega.reciprocal_integral());
}

ZeroMode::ZeroMode(PhysicalParams params, ConformalFactor omega)
    : params_(params), omega_(std::move(omega)), eigen_(spinor_eigenpair(params)) {
    norm_constant_ = 0.0;
    if (params_.k_v > params_.mass && admissible(params_)) {
        try {
            norm_constant_ = normalize(params_, omega_);
        } catch (const DivergenceError&) {
            // formal mode over a divergent measure; stays unnormalized
        }
    }
}

double ZeroMode::norm_constant() const {
    if (!normalizable()) {
        throw InadmissibleError("mode is not normalizable: " + describe_inequality(params_));
    }
    return norm_constant_;
}

std::complex<double> ZeroMode::phase(double x) const {
    return std::exp(-eigen_.lambda * omega_.antiderivative(x));
}

Vector2c ZeroMode::reduced_spinor(double x) const { return eigen_.chi * phase(x); }

Vector2c ZeroMode::evaluate(double x, double y) const {
    const double w = omega_.value(x);
    const std::complex<double> plane_wave = std::exp(kI * params_.k_y * y);
    return norm_constant() / std::sqrt(w) * plane_wave * reduced_spinor(x);
}

ZeroMode build_zero_mode(const PhysicalParams& params, const ConformalFactor& omega) {
    params.validate();
    if (!admissible(params)) {
        throw InadmissibleError("zero mode not normalizable: " + describe_inequality(params));
    }
    try {
        omega.reciprocal_integral();
    } catch (const DivergenceError& e) {
        throw DivergenceError(std::string("curved measure divergent for ") + omega.describe() +
                              ": " + e.what());
    }
    return ZeroMode(params, omega);
}

}  // namespace cdirac
