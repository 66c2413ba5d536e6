#pragma once

/**
 * @file optimal_state.hpp
 * @brief Irrep spectrum of N spins, the tridiagonal coupling matrix M and
 * the closed-form optima built from its top eigenpair.
 *
 * Coefficient vectors are ordered by descending j, i.e. a_{N/2} first, so the
 * corner entry zeta of M sits on the smallest irrep (j = 0 or j = 1/2).
 * Eigenvalues are reported for M itself (mu), not in the shifted variable
 * lambda = -mu/2 that the characteristic polynomial is written in.
 */

#include <dcc/error.hpp>
#include <dcc/su2.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace dcc {

/// Irreps j = N/2, N/2 - 1, ... that occur once each in the signal state.
class IrrepSpectrum {
public:
    explicit IrrepSpectrum(int n_spins) : n_spins_(n_spins) {
        if (n_spins < 1)
            throw InvalidArgument("number of spins must be >= 1, got " + std::to_string(n_spins));
        for (int t = n_spins; t >= 0; t -= 2) labels_.push_back(IrrepLabel{t});
    }

    int n_spins() const { return n_spins_; }
    const std::vector<IrrepLabel>& labels() const& { return labels_; }
    // By value on rvalues so `for (auto l : IrrepSpectrum(n).labels())` is safe.
    std::vector<IrrepLabel> labels() && { return std::move(labels_); }
    int size() const { return static_cast<int>(labels_.size()); }
    const IrrepLabel& operator[](int i) const { return labels_[i]; }

    /// Sum of d_j^2, the dimension of the span of all signal states.
    int signal_dimension() const {
        int total = 0;
        for (auto l : labels_) total += l.dim() * l.dim();
        return total;
    }

    friend bool operator==(const IrrepSpectrum&, const IrrepSpectrum&) = default;

private:
    int n_spins_;
    std::vector<IrrepLabel> labels_;
};

/// Symmetric tridiagonal matrix with unit off-diagonals, zero diagonal and
/// corner entry zeta (-1 for N even, 0 for N odd).
struct TridiagonalSpec {
    int n = 1;
    double zeta = 0.0;

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = 1.0;
        m(n - 1, n - 1) = zeta;
        return m;
    }

    /// y = M x without forming M.
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) {
            if (i > 0) y(i) += x(i - 1);
            if (i + 1 < n) y(i) += x(i + 1);
        }
        y(n - 1) += zeta * x(n - 1);
        return y;
    }
};

/// Amplitudes a_j aligned with an IrrepSpectrum.
struct CoefficientVector {
    IrrepSpectrum spectrum;
    Eigen::VectorXd a;

    CoefficientVector(IrrepSpectrum s, Eigen::VectorXd values)
        : spectrum(std::move(s)), a(std::move(values)) {
        if (a.size() != spectrum.size())
            throw InvalidArgument("coefficient vector length does not match the irrep spectrum");
    }

    int n_spins() const { return spectrum.n_spins(); }
    double norm_squared() const { return a.squaredNorm(); }

    /// a concentrated on a single irrep (index 0 is j = N/2).
    static CoefficientVector unit(int n_spins, int index) {
        IrrepSpectrum s(n_spins);
        if (index < 0 || index >= s.size()) throw InvalidArgument("unit coefficient index out of range");
        Eigen::VectorXd a = Eigen::VectorXd::Zero(s.size());
        a(index) = 1.0;
        return {std::move(s), std::move(a)};
    }
};

inline TridiagonalSpec build_M(int n_spins) {
    const IrrepSpectrum s(n_spins);
    return {s.size(), n_spins % 2 == 0 ? -1.0 : 0.0};
}

/// P_n(lambda) = det(M + 2 lambda I) via P_k = 2 lambda P_{k-1} - P_{k-2},
/// P_0 = 1, P_1 = 2 lambda + zeta.
inline double charpoly_eval(const TridiagonalSpec& spec, double lambda) {
    double prev = 1.0;
    double cur = 2.0 * lambda + spec.zeta;
    if (spec.n == 0) return prev;
    for (int k = 2; k <= spec.n; ++k) {
        const double next = 2.0 * lambda * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {

// Number of negative entries among the ratios P_k / P_{k-1} of the
// characteristic-polynomial sequence, which equals the number of eigenvalues
// of M below -2 lambda (Sturm count).
inline int sturm_negatives(const TridiagonalSpec& spec, double lambda) {
    constexpr double tiny = 1e-300;
    int negatives = 0;
    double ratio = 2.0 * lambda + spec.zeta;
    if (ratio == 0.0) ratio = -tiny;
    if (ratio < 0.0) ++negatives;
    for (int k = 2; k <= spec.n; ++k) {
        ratio = 2.0 * lambda - 1.0 / ratio;
        if (ratio == 0.0) ratio = -tiny;
        if (ratio < 0.0) ++negatives;
    }
    return negatives;
}

}  // namespace detail

/// Largest eigenvalue of M by bisection on the characteristic-polynomial
/// sign sequence over lambda in [-1, 1].
inline double lambda_max_numeric(const TridiagonalSpec& spec) {
    // Below the smallest root lambda_min = -mu_max/2 every eigenvalue satisfies
    // mu < -2 lambda; above it one of them does not.
    double lo = -1.0 - 1e-9;  // Gershgorin: |mu| <= 2
    double hi = 1.0 + 1e-9;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (detail::sturm_negatives(spec, mid) == spec.n)
            lo = mid;
        else
            hi = mid;
    }
    return -(lo + hi);  // mu = -2 lambda
}

inline double chi1_max_closed(int n_spins) {
    if (n_spins < 1) throw InvalidArgument("number of spins must be >= 1");
    return 1.0 + 2.0 * std::cos(two_pi / (n_spins + 3));
}

/// a_j = 2/sqrt(N+3) * sin((2j+1) pi / (N+3)), the positive top eigenvector of M.
inline CoefficientVector optimal_coeffs(int n_spins) {
    IrrepSpectrum s(n_spins);
    Eigen::VectorXd a(s.size());
    const double scale = 2.0 / std::sqrt(n_spins + 3.0);
    for (int i = 0; i < s.size(); ++i)
        a(i) = scale * std::sin((s[i].twoJ + 1) * pi / (n_spins + 3));
    return {std::move(s), std::move(a)};
}

inline double min_error_closed(int n_spins) {
    if (n_spins < 1) throw InvalidArgument("number of spins must be >= 1");
    return 4.0 * (1.0 - std::cos(two_pi / (n_spins + 3)));
}

/// Mean squared error per axis, (3 - <chi_1>_max) / 6.
inline double per_axis_error(int n_spins) {
    return (3.0 - chi1_max_closed(n_spins)) / 6.0;
}

inline double mean_fidelity(int n_spins) {
    if (n_spins < 1) throw InvalidArgument("number of spins must be >= 1");
    return 0.5 * (1.0 + std::cos(two_pi / (n_spins + 3)));
}

/// 1 + a^T M a: the Haar average of chi_1 |sum_j a_j chi_j|^2 for unit a.
inline double chi1_bound(const CoefficientVector& c) {
    const TridiagonalSpec m = build_M(c.n_spins());
    return 1.0 + c.a.dot(m.apply(c.a));
}

/// Holevo error attained by the covariant measurement for coefficients a.
inline double analytic_error(const CoefficientVector& c) {
    return 6.0 - 2.0 * chi1_bound(c);
}

}  // namespace dcc
