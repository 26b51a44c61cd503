#pragma once

#include "cdirac/conformal.hpp"
#include "cdirac/zeromode.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <vector>

namespace cdirac {

/// Uniform grid with an odd number of nodes, so a symmetric domain contains
/// x = 0 exactly.
struct Grid {
    double x_min = -8.0;
    double x_max = 8.0;
    int n_points = 2001;

    Grid() = default;
    Grid(double x_min, double x_max, int n_points);

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    std::vector<double> nodes() const;
};

enum class BoundaryCondition { Dirichlet, Periodic };

/// Finite-difference discretization of the reduced operator
///   H = -i sigma1 D_x - sigma2 k_y Omega(x) + sigma3 M Omega(x) + k_v Omega(x)
/// on interleaved 2-spinor samples (node-major, component-minor). D_x is the
/// antisymmetric central-difference stencil. Dirichlet rows pin the boundary
/// spinors to zero via unit diagonal constraints; Periodic rows wrap the
/// stencil around. H is not Hermitian in general and no symmetry is assumed.
class DiracMatrix {
public:
    DiracMatrix(PhysicalParams params, const ConformalFactor& omega, Grid grid,
                BoundaryCondition bc);

    int dimension() const { return 2 * grid_.n_points; }
    const Grid& grid() const { return grid_; }
    BoundaryCondition boundary_condition() const { return bc_; }
    const PhysicalParams& params() const { return params_; }
    const std::vector<double>& omega_samples() const { return omega_; }

    /// Matrix-free application to an interleaved spinor vector.
    Eigen::VectorXcd apply(const Eigen::VectorXcd& psi) const;

    /// Dense materialization; agrees with apply() to machine precision.
    Eigen::MatrixXcd dense() const;

    /// Sparse materialization (banded plus periodic corners).
    Eigen::SparseMatrix<std::complex<double>> sparse() const;

private:
    PhysicalParams params_;
    Grid grid_;
    BoundaryCondition bc_;
    std::vector<double> omega_;  // Omega at the nodes
};

DiracMatrix assemble(const PhysicalParams& params, const ConformalFactor& omega,
                     const Grid& grid, BoundaryCondition bc);

/// Relative residual max_interior |(H psi)_i| / max_interior |psi_i| of the
/// sampled analytic mode psi(x) = chi phi(x) under the E = 0 operator.
/// Interior means nodes 1 .. n-2, so the value is identical for Dirichlet and
/// Periodic assembly. Scales as O(h^2 (|lambda| Omega_max)^3).
/// Throws ResolutionError when h |lambda| max(Omega) > 0.5.
double residual(const PhysicalParams& params, const ConformalFactor& omega,
                const Grid& grid, const ZeroMode& mode);

/// The k eigenvalues of H of smallest modulus, sorted by modulus.
/// Dirichlet constraints are imposed by eliminating the pinned boundary
/// spinors, so the result is the spectrum of the constrained operator with
/// no artifacts from the unit constraint rows. Dense Schur decomposition for
/// small dimensions; shift-invert Arnoldi on a sparse factorization
/// otherwise. Dimensions above 10^4 are rejected.
std::vector<std::complex<double>> near_zero_eigen(const DiracMatrix& matrix, int k);

}  // namespace cdirac
