#include "cdirac/geometry.hpp"

#include "cdirac/errors.hpp"

#include <cmath>
#include <string>

namespace cdirac {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Matrix3r metric_at(const ConformalFactor& omega, double x) {
    const double w = omega.value(x);
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw DomainError("metric degenerate: Omega(" + std::to_string(x) +
                          ") = " + std::to_string(w) + " is not positive");
    }
    Matrix3r g = Matrix3r::Zero();
    g(0, 0) = w * w;
    g(1, 1) = -w * w;
    g(2, 2) = -1.0;
    return g;
}

}  // namespace

double Rank3::max_abs_difference(const Rank3& other) const {
    double worst = 0.0;
    for (int i = 0; i < 27; ++i) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

Matrix3r frame_metric() {
    Matrix3r eta = Matrix3r::Zero();
    eta(0, 0) = 1.0;
    eta(1, 1) = -1.0;
    eta(2, 2) = -1.0;
    return eta;
}

std::array<Matrix2c, 3> flat_gamma_matrices() {
    Matrix2c sigma1, sigma2, sigma3;
    sigma1 << 0, 1, 1, 0;
    sigma2 << 0, -kI, kI, 0;
    sigma3 << 1, 0, 0, -1;
    return {sigma3, kI * sigma2, kI * sigma1};
}

GeometryBundle build_geometry(const ConformalFactor& omega, double x) {
    const auto [w, wp] = omega.evaluate(x);
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw DomainError("metric degenerate: Omega(" + std::to_string(x) +
                          ") = " + std::to_string(w) + " is not positive");
    }
    const double ratio = wp / w;  // Omega'/Omega

    GeometryBundle b;
    b.x = x;
    b.metric = metric_at(omega, x);
    b.inverse_metric = Matrix3r::Zero();
    b.inverse_metric(0, 0) = 1.0 / (w * w);
    b.inverse_metric(1, 1) = -1.0 / (w * w);
    b.inverse_metric(2, 2) = -1.0;

    b.vielbein = Matrix3r::Zero();
    b.vielbein(0, 0) = w;
    b.vielbein(1, 1) = w;
    b.vielbein(2, 2) = 1.0;
    b.inverse_vielbein = Matrix3r::Zero();
    b.inverse_vielbein(0, 0) = 1.0 / w;
    b.inverse_vielbein(1, 1) = 1.0 / w;
    b.inverse_vielbein(2, 2) = 1.0;

    b.christoffels.at(0, 0, 1) = ratio;
    b.christoffels.at(0, 1, 0) = ratio;
    b.christoffels.at(1, 0, 0) = ratio;
    b.christoffels.at(1, 1, 1) = ratio;

    b.spin_connection.at(0, 1, 0) = ratio;
    b.spin_connection.at(1, 0, 0) = ratio;

    b.gamma_flat = flat_gamma_matrices();
    b.gamma_curved = {b.gamma_flat[0] / w, b.gamma_flat[1] / w, b.gamma_flat[2]};

    const Matrix2c commutator =
        b.gamma_flat[0] * b.gamma_flat[1] - b.gamma_flat[1] * b.gamma_flat[0];
    b.spinor_connection = {ratio / 4.0 * commutator, Matrix2c::Zero(), Matrix2c::Zero()};
    return b;
}

double default_oracle_step(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }

Rank3 christoffel_oracle(const ConformalFactor& omega, double x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("christoffel_oracle: step must be positive");

    const Matrix3r g_minus = metric_at(omega, x - h);
    const Matrix3r g_center = metric_at(omega, x);
    const Matrix3r g_plus = metric_at(omega, x + h);

    // the metric depends on x (index 1) only; t and y derivatives vanish
    std::array<Matrix3r, 3> dg = {Matrix3r::Zero(), (g_plus - g_minus) / (2.0 * h),
                                  Matrix3r::Zero()};

    Matrix3r g_inv = Matrix3r::Zero();
    for (int i = 0; i < 3; ++i) g_inv(i, i) = 1.0 / g_center(i, i);

    Rank3 gamma;
    for (int nu = 0; nu < 3; ++nu) {
        for (int sg = 0; sg < 3; ++sg) {
            for (int mu = 0; mu < 3; ++mu) {
                double sum = 0.0;
                for (int rho = 0; rho < 3; ++rho) {
                    sum += g_inv(nu, rho) *
                           (dg[sg](rho, mu) + dg[mu](rho, sg) - dg[rho](sg, mu));
                }
                gamma.at(nu, sg, mu) = 0.5 * sum;
            }
        }
    }
    return gamma;
}

Rank3 spin_connection_oracle(const ConformalFactor& omega, double x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("spin_connection_oracle: step must be positive");

    auto inverse_vielbein_at = [&omega](double t) {
        const double w = omega.value(t);
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw DomainError("metric degenerate inside oracle stencil at x = " + std::to_string(t));
        }
        Matrix3r inv = Matrix3r::Zero();
        inv(0, 0) = 1.0 / w;
        inv(1, 1) = 1.0 / w;
        inv(2, 2) = 1.0;
        return inv;
    };

    const Matrix3r inv_center = inverse_vielbein_at(x);
    const Matrix3r d_inv = (inverse_vielbein_at(x + h) - inverse_vielbein_at(x - h)) / (2.0 * h);
    std::array<Matrix3r, 3> d_inverse_vielbein = {Matrix3r::Zero(), d_inv, Matrix3r::Zero()};

    const double w = omega.value(x);
    Matrix3r vielbein = Matrix3r::Zero();
    vielbein(0, 0) = w;
    vielbein(1, 1) = w;
    vielbein(2, 2) = 1.0;

    const Rank3 gamma = christoffel_oracle(omega, x, h);

    // omega^a_{b mu} = e^a_nu (d_mu E_b^nu + Gamma^nu_{sigma mu} E_b^sigma)
    Rank3 conn;
    for (int a = 0; a < 3; ++a) {
        for (int bb = 0; bb < 3; ++bb) {
            for (int mu = 0; mu < 3; ++mu) {
                double sum = 0.0;
                for (int nu = 0; nu < 3; ++nu) {
                    double covariant = d_inverse_vielbein[mu](bb, nu);
                    for (int sg = 0; sg < 3; ++sg) {
                        covariant += gamma.at(nu, sg, mu) * inv_center(bb, sg);
                    }
                    sum += vielbein(a, nu) * covariant;
                }
                conn.at(a, bb, mu) = sum;
            }
        }
    }
    return conn;
}

double verify_clifford(const GeometryBundle& bundle) {
    double worst = 0.0;
    for (int mu = 0; mu < 3; ++mu) {
        for (int nu = 0; nu < 3; ++nu) {
            const Matrix2c anti = bundle.gamma_curved[mu] * bundle.gamma_curved[nu] +
                                  bundle.gamma_curved[nu] * bundle.gamma_curved[mu];
            const Matrix2c target = 2.0 * bundle.inverse_metric(mu, nu) * Matrix2c::Identity();
            worst = std::max(worst, (anti - target).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double verify_flat_clifford(const GeometryBundle& bundle) {
    const Matrix3r eta = frame_metric();
    double worst = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            const Matrix2c anti = bundle.gamma_flat[a] * bundle.gamma_flat[b] +
                                  bundle.gamma_flat[b] * bundle.gamma_flat[a];
            const Matrix2c target = 2.0 * eta(a, b) * Matrix2c::Identity();  // eta^{ab} = eta_{ab}
            worst = std::max(worst, (anti - target).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double vielbein_metric_violation(const GeometryBundle& bundle) {
    const Matrix3r eta = frame_metric();
    const Matrix3r reconstructed = bundle.vielbein.transpose() * eta * bundle.vielbein;
    return (reconstructed - bundle.metric).cwiseAbs().maxCoeff();
}

double spin_connection_antisymmetry_violation(const GeometryBundle& bundle) {
    const Matrix3r eta = frame_metric();
    double worst = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int mu = 0; mu < 3; ++mu) {
                const double lowered_ab = eta(a, a) * bundle.spin_connection.at(a, b, mu);
                const double lowered_ba = eta(b, b) * bundle.spin_connection.at(b, a, mu);
                worst = std::max(worst, std::abs(lowered_ab + lowered_ba));
            }
        }
    }
    return worst;
}

std::array<Matrix2c, 3> spinor_connection_from(const Rank3& spin_connection) {
    const auto gamma_flat = flat_gamma_matrices();
    const Matrix3r eta = frame_metric();
    std::array<Matrix2c, 3> result = {Matrix2c::Zero(), Matrix2c::Zero(), Matrix2c::Zero()};
    for (int mu = 0; mu < 3; ++mu) {
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                const double lowered = eta(a, a) * spin_connection.at(a, b, mu);
                if (lowered == 0.0) continue;
                result[mu] += lowered / 8.0 *
                              (gamma_flat[a] * gamma_flat[b] - gamma_flat[b] * gamma_flat[a]);
            }
        }
    }
    return result;
}

}  // namespace cdirac
