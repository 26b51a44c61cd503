#pragma once

#include "cdirac/conformal.hpp"

#include <Eigen/Dense>

#include <complex>

namespace cdirac {

using Vector2c = Eigen::Vector2cd;

/// Parameters of the reduced 1D problem. The scalar potential is
/// V(x) = k_v Omega(x); M is the mass, k_y the transverse momentum,
/// L the strip length in y, sigma the branch label.
struct PhysicalParams {
    double mass = 0.0;  // M >= 0
    double k_v = 0.0;
    double k_y = 0.0;
    double length = 1.0;  // L > 0
    int sigma = +1;       // +1 or -1

    void validate() const;  // throws std::invalid_argument
};

/// lambda and the unnormalized spinor chi of
/// (sigma3 k_y + sigma2 M + i sigma1 k_v) chi = lambda chi.
struct SpinorEigenpair {
    std::complex<double> lambda;
    Vector2c chi;
};

struct KyRange {
    double min = 0.0;
    double max = 0.0;
};

struct DegeneracyCount {
    int count = 0;
    /// k_v^2 < M^2: no transverse momentum admits a zero mode; count is 0.
    bool no_admissible_modes = false;
};

/// The coefficient matrix A = sigma3 k_y + sigma2 M + i sigma1 k_v.
Eigen::Matrix2cd reduced_coefficient_matrix(const PhysicalParams& params);

/// Eigenpair with lambda_sigma = sigma * sqrt(k_y^2 + M^2 - k_v^2) on the
/// principal branch (nonnegative real part, else nonnegative imaginary part),
/// chi = (1, i (lambda - k_y)/(M - k_v)). At M = k_v the first form
/// degenerates and the second-row form (-i (k_y + lambda)/(M + k_v), 1) is
/// used; DegenerateParamsError if that is singular too.
SpinorEigenpair spinor_eigenpair(const PhysicalParams& params);

/// k_v^2 >= k_y^2 + M^2 (boundary included: lambda = 0 is admissible).
bool admissible(const PhysicalParams& params);

/// [-sqrt(k_v^2 - M^2), +sqrt(k_v^2 - M^2)]; EmptyRangeError if k_v^2 < M^2.
KyRange ky_range(const PhysicalParams& params);

/// 2 floor(L sqrt(k_v^2 - M^2) / 2pi) + 1 under periodic boundary conditions
/// k_y = 2 pi m / L. Returns {0, true} instead of erroring when k_v^2 < M^2.
DegeneracyCount degeneracy(const PhysicalParams& params);

/// Squared norm of the stored chi; equals 2 k_v / (k_v - M) for admissible
/// parameters.
double chi_norm_squared(const PhysicalParams& params);

/// N = [ |chi|^2 L I ]^(-1/2) with I the quadrature-backed reciprocal
/// integral of Omega. The inner product runs over the constant-time
/// hypersurface with volume weight sqrt(g2) = Omega, which makes the
/// normalization integrand |chi|^2 / Omega; only this weight normalizes the
/// closed-form constants reproduced by the verification suite.
/// Throws DegenerateParamsError when k_v <= M.
double normalize(const PhysicalParams& params, const ConformalFactor& omega);

/// Scaled probability density P(x) = sqrt(g2) L rho(x) = 1 / (Omega(x) I).
/// Integrates to 1 over the real line.
double probability_density(const PhysicalParams& params, const ConformalFactor& omega,
                           double x);

/// Assembled zero-energy state
///   Psi_sigma(x, y) = N Omega^{-1/2}(x) e^{i k_y y} chi_sigma phi_sigma(x),
/// phi_sigma(x) = exp(-lambda_sigma W(x)), W(x) = int_0^x Omega.
///
/// Direct construction also admits inadmissible parameters: the formal
/// solution chi phi(x) still solves the reduced equation and is useful for
/// residual studies, it just cannot be normalized. normalizable() reports
/// which case holds; norm_constant() and evaluate() require it.
class ZeroMode {
public:
    ZeroMode(PhysicalParams params, ConformalFactor omega);

    const PhysicalParams& params() const { return params_; }
    const ConformalFactor& omega() const { return omega_; }
    std::complex<double> lambda() const { return eigen_.lambda; }
    const Vector2c& chi() const { return eigen_.chi; }

    bool normalizable() const { return norm_constant_ > 0.0; }
    double norm_constant() const;

    /// phi_sigma(x) = exp(-lambda W(x)); unimodular for admissible parameters.
    std::complex<double> phase(double x) const;

    /// chi * phi(x): the reduced spinor psi(x) entering the 1D operator.
    Vector2c reduced_spinor(double x) const;

    /// Full wavefunction at (x, y), t-independent since E = 0.
    Vector2c evaluate(double x, double y) const;

private:
    PhysicalParams params_;
    ConformalFactor omega_;
    SpinorEigenpair eigen_;
    double norm_constant_;
};

/// Factory enforcing admissibility and a convergent curved measure.
ZeroMode build_zero_mode(const PhysicalParams& params, const ConformalFactor& omega);

}  // namespace cdirac
