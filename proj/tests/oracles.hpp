#pragma once

// Test-only reference computations, independent of the library code paths
// they are compared against.

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace dcc::oracle {

/// Spin-j J_y in the basis m = j, ..., -j.
inline Eigen::MatrixXcd spin_jy(int twoJ) {
    const int d = twoJ + 1;
    const double j = 0.5 * twoJ;
    Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i) {
        const double m = j - i - 1;  // lower state of the <m+1|J_+|m> pair
        const double c = 0.5 * std::sqrt(j * (j + 1) - m * (m + 1));
        // J_y = (J_+ - J_-) / 2i; <m+1|J_y|m> = c / i, <m|J_y|m+1> = -c / i
        jy(i, i + 1) = std::complex<double>(0.0, -c);
        jy(i + 1, i) = std::complex<double>(0.0, c);
    }
    return jy;
}

/// exp(-i t H) for Hermitian H via its eigendecomposition.
inline Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phase(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) phase(i) = std::polar(1.0, -t * es.eigenvalues()(i));
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

/// chi_j by the sine ratio; only valid away from omega = 0, 2pi.
inline double character_sine_ratio(int twoJ, double omega) {
    return std::sin(0.5 * (twoJ + 1) * omega) / std::sin(0.5 * omega);
}

/// U_n(cos theta) = sin((n+1) theta) / sin theta.
inline double chebyshev_u_trig(int n, double x) {
    const double theta = std::acos(x);
    return std::sin((n + 1) * theta) / std::sin(theta);
}

}  // namespace dcc::oracle
