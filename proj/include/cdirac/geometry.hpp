#pragma once

#include "cdirac/conformal.hpp"

#include <Eigen/Dense>

#include <array>

namespace cdirac {

using Matrix2c = Eigen::Matrix2cd;
using Matrix3r = Eigen::Matrix3d;

/// Rank-3 coefficient array indexed [upper, lower1, lower2].
/// Used for both Christoffel symbols Gamma^nu_{sigma mu} (nu upper) and the
/// spin connection omega^a_{b mu} (a upper). Explicit accessors keep the
/// index slots from being silently transposed.
class Rank3 {
public:
    Rank3() { data_.fill(0.0); }

    double& at(int upper, int lower1, int lower2) { return data_[index(upper, lower1, lower2)]; }
    double at(int upper, int lower1, int lower2) const { return data_[index(upper, lower1, lower2)]; }

    double max_abs_difference(const Rank3& other) const;

private:
    static int index(int upper, int lower1, int lower2) { return (upper * 3 + lower1) * 3 + lower2; }
    std::array<double, 27> data_;
};

/// Metric, frame fields, connections and gamma matrices of the line element
/// ds^2 = Omega^2(x) (dt^2 - dx^2) - dy^2 at a single point x.
/// Coordinate order is (t, x, y) = (0, 1, 2); frame indices use the
/// Minkowski metric eta = diag(1, -1, -1).
///
/// Convention: both Clifford relations carry the factor two,
/// {gamma^mu, gamma^nu} = 2 g^{mu nu} and {gammabar^a, gammabar^b} =
/// 2 eta^{ab}. Only with the common factor does gamma^mu = gammabar^a E_a^mu
/// satisfy both algebras at once; conventions that drop the factor on the
/// curved side are inconsistent with that projection.
struct GeometryBundle {
    double x = 0.0;
    Matrix3r metric = Matrix3r::Zero();            // g_{mu nu}
    Matrix3r inverse_metric = Matrix3r::Zero();    // g^{mu nu}
    Matrix3r vielbein = Matrix3r::Zero();          // e^a_mu
    Matrix3r inverse_vielbein = Matrix3r::Zero();  // E_a^mu
    Rank3 christoffels;                            // Gamma^nu_{sigma mu}
    Rank3 spin_connection;                         // omega^a_{b mu}
    std::array<Matrix2c, 3> gamma_flat;            // sigma3, i sigma2, i sigma1
    std::array<Matrix2c, 3> gamma_curved;          // gammabar^a E_a^mu
    std::array<Matrix2c, 3> spinor_connection;     // Gamma_mu
};

/// Minkowski frame metric diag(1, -1, -1).
Matrix3r frame_metric();

/// The fixed Pauli representation: gammabar^0 = sigma3, gammabar^1 = i sigma2,
/// gammabar^2 = i sigma1.
std::array<Matrix2c, 3> flat_gamma_matrices();

/// Populates every field from the closed forms
///   Gamma^0_{01} = Gamma^0_{10} = Gamma^1_{00} = Gamma^1_{11} = Omega'/Omega,
///   omega^0_{10} = omega^1_{00} = Omega'/Omega,
///   gamma^{0,1} = gammabar^{0,1}/Omega, gamma^2 = gammabar^2,
///   Gamma_0 = (Omega'/4Omega) [gammabar^0, gammabar^1], Gamma_1 = Gamma_2 = 0.
/// Throws DomainError when Omega(x) <= 0 (degenerate metric).
GeometryBundle build_geometry(const ConformalFactor& omega, double x);

/// Step used by the finite-difference oracles when none is given.
double default_oracle_step(double x);

/// Independent Christoffel symbols from the general formula
/// Gamma^nu_{sigma mu} = 1/2 g^{nu rho} (d_sigma g_{rho mu} + d_mu g_{rho sigma}
/// - d_rho g_{sigma mu}) with metric x-derivatives by central differences.
/// Agrees with build_geometry to O(h^2).
Rank3 christoffel_oracle(const ConformalFactor& omega, double x, double h);

/// Independent spin connection omega^a_{b mu} = e^a_nu (d_mu E_b^nu
/// + Gamma^nu_{sigma mu} E_b^sigma) with central-difference frame derivatives
/// and finite-difference Christoffels.
Rank3 spin_connection_oracle(const ConformalFactor& omega, double x, double h);

/// max_{mu,nu} max-entry of |{gamma^mu, gamma^nu} - 2 g^{mu nu} I|.
double verify_clifford(const GeometryBundle& bundle);

/// max_{a,b} max-entry of |{gammabar^a, gammabar^b} - 2 eta^{ab} I|.
double verify_flat_clifford(const GeometryBundle& bundle);

/// max-entry of |e^a_mu e^b_nu eta_{ab} - g_{mu nu}|.
double vielbein_metric_violation(const GeometryBundle& bundle);

/// max over (a,b,mu) of |omega_{ab mu} + omega_{ba mu}| after lowering the
/// first index with eta.
double spin_connection_antisymmetry_violation(const GeometryBundle& bundle);

/// Spinor connection from the general formula
/// Gamma_mu = 1/8 omega_{ab mu} [gammabar^a, gammabar^b], using the given
/// spin connection coefficients. Equals the closed form in the bundle.
std::array<Matrix2c, 3> spinor_connection_from(const Rank3& spin_connection);

}  // namespace cdirac
