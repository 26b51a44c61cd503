#include "cdirac/discrete.hpp"

#include "cdirac/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace cdirac {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr int kDenseEigenLimit = 512;
constexpr int kMaxEigenDimension = 10000;

}  // namespace

Grid::Grid(double x_min_, double x_max_, int n_points_)
    : x_min(x_min_), x_max(x_max_), n_points(n_points_) {
    if (!(x_max > x_min)) throw std::invalid_argument("grid: x_max must exceed x_min");
    if (n_points < 3) throw std::invalid_argument("grid: at least 3 nodes required");
    if (n_points % 2 == 0) {
        throw std::invalid_argument("grid: n_points must be odd so a symmetric domain samples x = 0");
    }
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_points);
    const double h = spacing();
    for (int i = 0; i < n_points; ++i) xs[i] = x_min + h * i;
    xs.back() = x_max;
    return xs;
}

DiracMatrix::DiracMatrix(PhysicalParams params, const ConformalFactor& omega, Grid grid,
                         BoundaryCondition bc)
    : params_(params), grid_(grid), bc_(bc) {
    params_.validate();
    omega_.reserve(grid_.n_points);
    for (double x : grid_.nodes()) omega_.push_back(omega.value(x));
}

DiracMatrix assemble(const PhysicalParams& params, const ConformalFactor& omega,
                     const Grid& grid, BoundaryCondition bc) {
    return DiracMatrix(params, omega, grid, bc);
}

Eigen::VectorXcd DiracMatrix::apply(const Eigen::VectorXcd& psi) const {
    const int n = grid_.n_points;
    if (psi.size() != 2 * n) throw std::invalid_argument("apply: vector size mismatch");
    const double inv2h = 1.0 / (2.0 * grid_.spacing());
    const double kv = params_.k_v, m = params_.mass, ky = params_.k_y;

    Eigen::VectorXcd out(2 * n);
    auto stencil_row = [&](int i, int prev, int next) {
        const std::complex<double> up = psi[2 * i], dn = psi[2 * i + 1];
        const std::complex<double> d_up = (psi[2 * next] - psi[2 * prev]) * inv2h;
        const std::complex<double> d_dn = (psi[2 * next + 1] - psi[2 * prev + 1]) * inv2h;
        const double w = omega_[i];
        out[2 * i] = -kI * d_dn + w * ((kv + m) * up + kI * ky * dn);
        out[2 * i + 1] = -kI * d_up + w * (-kI * ky * up + (kv - m) * dn);
    };

    for (int i = 1; i + 1 < n; ++i) stencil_row(i, i - 1, i + 1);
    if (bc_ == BoundaryCondition::Periodic) {
        stencil_row(0, n - 1, 1);
        stencil_row(n - 1, n - 2, 0);
    } else {
        out[0] = psi[0];
        out[1] = psi[1];
        out[2 * n - 2] = psi[2 * n - 2];
        out[2 * n - 1] = psi[2 * n - 1];
    }
    return out;
}

namespace {

template <typename Emit>
void for_each_entry(const PhysicalParams& p, const std::vector<double>& omega, double h,
                    BoundaryCondition bc, Emit&& emit) {
    const int n = static_cast<int>(omega.size());
    const std::complex<double> kin = -kI / (2.0 * h);

    auto stencil_row = [&](int i, int prev, int next) {
        const double w = omega[i];
        emit(2 * i, 2 * i, std::complex<double>(w * (p.k_v + p.mass), 0.0));
        emit(2 * i + 1, 2 * i + 1, std::complex<double>(w * (p.k_v - p.mass), 0.0));
        if (p.k_y != 0.0) {
            emit(2 * i, 2 * i + 1, kI * (p.k_y * w));
            emit(2 * i + 1, 2 * i, -kI * (p.k_y * w));
        }
        emit(2 * i, 2 * next + 1, kin);
        emit(2 * i, 2 * prev + 1, -kin);
        emit(2 * i + 1, 2 * next, kin);
        emit(2 * i + 1, 2 * prev, -kin);
    };

    for (int i = 1; i + 1 < n; ++i) stencil_row(i, i - 1, i + 1);
    if (bc == BoundaryCondition::Periodic) {
        stencil_row(0, n - 1, 1);
        stencil_row(n - 1, n - 2, 0);
    } else {
        emit(0, 0, {1.0, 0.0});
        emit(1, 1, {1.0, 0.0});
        emit(2 * n - 2, 2 * n - 2, {1.0, 0.0});
        emit(2 * n - 1, 2 * n - 1, {1.0, 0.0});
    }
}

}  // namespace

Eigen::MatrixXcd DiracMatrix::dense() const {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dimension(), dimension());
    for_each_entry(params_, omega_, grid_.spacing(), bc_,
                   [&h](int r, int c, std::complex<double> v) { h(r, c) += v; });
    return h;
}

Eigen::SparseMatrix<std::complex<double>> DiracMatrix::sparse() const {
    std::vector<Eigen::Triplet<std::complex<double>>> triplets;
    triplets.reserve(static_cast<size_t>(grid_.n_points) * 8);
    for_each_entry(params_, omega_, grid_.spacing(), bc_,
                   [&triplets](int r, int c, std::complex<double> v) {
                       triplets.emplace_back(r, c, v);
                   });
    Eigen::SparseMatrix<std::complex<double>> mat(dimension(), dimension());
    mat.setFromTriplets(triplets.begin(), triplets.end());
    return mat;
}

double residual(const PhysicalParams& params, const ConformalFactor& omega,
                const Grid& grid, const ZeroMode& mode) {
    const auto xs = grid.nodes();
    double omega_max = 0.0;
    for (double x : xs) omega_max = std::max(omega_max, omega.value(x));

    const double lambda_mag = std::abs(mode.lambda());
    const double phase_per_step = grid.spacing() * lambda_mag * omega_max;
    if (phase_per_step > 0.5) {
        throw ResolutionError("grid under-resolves the mode: h |lambda| max(Omega) = " +
                              std::to_string(phase_per_step) + " > 0.5");
    }

    const int n = grid.n_points;
    Eigen::VectorXcd psi(2 * n);
    for (int i = 0; i < n; ++i) {
        const Vector2c s = mode.reduced_spinor(xs[i]);
        psi[2 * i] = s[0];
        psi[2 * i + 1] = s[1];
    }

    const DiracMatrix h = assemble(params, omega, grid, BoundaryCondition::Dirichlet);
    const Eigen::VectorXcd out = h.apply(psi);

    double num = 0.0, den = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        num = std::max(num, std::hypot(std::abs(out[2 * i]), std::abs(out[2 * i + 1])));
        den = std::max(den, std::hypot(std::abs(psi[2 * i]), std::abs(psi[2 * i + 1])));
    }
    return num / den;
}

namespace {

std::vector<std::complex<double>> sorted_by_modulus(std::vector<std::complex<double>> vals,
                                                    int k) {
    std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    vals.resize(static_cast<size_t>(k));
    return vals;
}

// Dirichlet pins the boundary spinors to zero, so the spectrum of the
// constrained operator lives on the interior unknowns; eliminating them
// keeps the unit constraint rows from injecting artificial eigenvalues at 1.
// Periodic assembly has no constraints and is used whole.
Eigen::SparseMatrix<std::complex<double>> constrained_operator(const DiracMatrix& matrix) {
    const Eigen::SparseMatrix<std::complex<double>> full = matrix.sparse();
    if (matrix.boundary_condition() == BoundaryCondition::Periodic) return full;

    const int dim = matrix.dimension();
    std::vector<Eigen::Triplet<std::complex<double>>> triplets;
    for (int col = 0; col < full.outerSize(); ++col) {
        for (Eigen::SparseMatrix<std::complex<double>>::InnerIterator it(full, col); it; ++it) {
            if (it.row() < 2 || it.row() >= dim - 2) continue;
            if (it.col() < 2 || it.col() >= dim - 2) continue;
            triplets.emplace_back(it.row() - 2, it.col() - 2, it.value());
        }
    }
    Eigen::SparseMatrix<std::complex<double>> interior(dim - 4, dim - 4);
    interior.setFromTriplets(triplets.begin(), triplets.end());
    return interior;
}

std::vector<std::complex<double>> dense_near_zero(
    const Eigen::SparseMatrix<std::complex<double>>& op, int k) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(Eigen::MatrixXcd(op), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw EigensolverError("dense Schur decomposition did not converge");
    }
    const auto& ev = solver.eigenvalues();
    return sorted_by_modulus({ev.data(), ev.data() + ev.size()}, k);
}

// Shift-invert Arnoldi about sigma = 0 (with a fallback shift when the
// factorization is singular). The Krylov space of H^{-1} makes the
// smallest-modulus eigenvalues of H dominant.
std::vector<std::complex<double>> arnoldi_near_zero(
    const Eigen::SparseMatrix<std::complex<double>>& a, int k) {
    using SpMat = Eigen::SparseMatrix<std::complex<double>>;
    const int dim = static_cast<int>(a.rows());

    double op_norm = 0.0;  // max absolute row sum
    {
        Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(dim);
        for (int col = 0; col < a.outerSize(); ++col) {
            for (SpMat::InnerIterator it(a, col); it; ++it) {
                row_sums[it.row()] += std::abs(it.value());
            }
        }
        op_norm = row_sums.maxCoeff();
    }

    SpMat identity(dim, dim);
    identity.setIdentity();
    Eigen::SparseLU<SpMat> lu;
    double shift = 0.0;
    bool factored = false;
    for (double candidate : {0.0, 1e-8 * op_norm, 1e-4 * op_norm}) {
        SpMat shifted = a;
        if (candidate != 0.0) shifted = a - candidate * identity;
        lu.compute(shifted);
        if (lu.info() == Eigen::Success) {
            shift = candidate;
            factored = true;
            break;
        }
    }
    if (!factored) {
        throw EigensolverError("sparse factorization of H - sigma I failed for every shift");
    }

    const int m_max = std::min(dim, std::max(400, 12 * k));
    Eigen::MatrixXcd basis(dim, m_max + 1);
    Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(m_max + 1, m_max);

    std::mt19937 rng(42u);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v0(dim);
    for (int i = 0; i < dim; ++i) v0[i] = std::complex<double>(gauss(rng), gauss(rng));
    basis.col(0) = v0 / v0.norm();

    const double residual_tol = 1e-9 * op_norm;
    std::vector<std::complex<double>> best;

    int m = 0;
    for (int j = 0; j < m_max; ++j) {
        Eigen::VectorXcd w = lu.solve(basis.col(j));
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                const std::complex<double> coeff = basis.col(i).dot(w);
                hess(i, j) += coeff;
                w -= coeff * basis.col(i);
            }
        }
        const double nrm = w.norm();
        hess(j + 1, j) = nrm;
        m = j + 1;
        const bool breakdown = nrm < 1e-14;
        if (!breakdown) basis.col(j + 1) = w / nrm;

        const bool checkpoint = breakdown || m == m_max || (m >= 40 && m % 40 == 0);
        if (checkpoint && m >= k) {
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ritz;
            ritz.compute(hess.topLeftCorner(m, m), /*computeEigenvectors=*/true);
            if (ritz.info() != Eigen::Success) continue;

            // rank Ritz values of H^{-1} by descending modulus = ascending |mu|
            std::vector<int> order(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) order[static_cast<size_t>(i)] = i;
            std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
                return std::abs(ritz.eigenvalues()[lhs]) > std::abs(ritz.eigenvalues()[rhs]);
            });

            std::vector<std::complex<double>> candidates;
            bool all_converged = true;
            for (int rank = 0; rank < k; ++rank) {
                const int idx = order[static_cast<size_t>(rank)];
                const std::complex<double> theta = ritz.eigenvalues()[idx];
                if (std::abs(theta) < 1e-300) {
                    all_converged = false;
                    break;
                }
                const std::complex<double> mu = shift + 1.0 / theta;
                const Eigen::VectorXcd x = basis.leftCols(m) * ritz.eigenvectors().col(idx);
                const Eigen::VectorXcd hx = a * x;
                const double direct_residual = (hx - mu * x).norm() / x.norm();
                if (direct_residual > residual_tol) {
                    all_converged = false;
                    break;
                }
                candidates.push_back(mu);
            }
            if (all_converged) {
                best = std::move(candidates);
                break;
            }
        }
        if (breakdown) break;
    }

    if (best.empty()) {
        throw EigensolverError("shift-invert Arnoldi did not converge to " +
                               std::to_string(k) + " eigenvalues within " +
                               std::to_string(m_max) + " iterations");
    }
    return sorted_by_modulus(std::move(best), k);
}

}  // namespace

std::vector<std::complex<double>> near_zero_eigen(const DiracMatrix& matrix, int k) {
    if (matrix.dimension() > kMaxEigenDimension) {
        throw DomainError("near_zero_eigen: dimension " + std::to_string(matrix.dimension()) +
                          " exceeds the desk-scale limit " + std::to_string(kMaxEigenDimension) +
                          "; use residual certification instead");
    }
    const auto op = constrained_operator(matrix);
    const int dim = static_cast<int>(op.rows());
    if (k < 1 || k > dim) {
        throw std::invalid_argument("near_zero_eigen: k must be in [1, constrained dimension]");
    }
    if (dim <= kDenseEigenLimit) return dense_near_zero(op, k);
    return arnoldi_near_zero(op, k);
}

}  // namespace cdirac
