#pragma once

/**
 * @file povm.hpp
 * @brief Covariant measurements: the seed state, finite product-grid designs
 * reproducing Haar orthogonality of Wigner matrices, and their certification.
 *
 * A FinitePovm {(g_r, c_r)} defines the rank-one elements
 *   O_r = c_r (U_A(g_r) x 1_B) |Psi><Psi| (U_A(g_r) x 1_B)^dagger,
 * with |Psi> = sum_{j,m} sqrt(d_j) |j m>_A |j m>_B. The elements sum to the
 * identity on the signal subspace as soon as the weighted points satisfy
 *   sum_r c_r D^j_{mm'}(g_r) conj(D^l_{nn'}(g_r)) = delta_jl delta_mn delta_m'n' / d_j
 * for all j, l up to N/2 + 1 in the parity family of N.
 */

#include <dcc/block_state.hpp>
#include <dcc/error.hpp>
#include <dcc/optimal_state.hpp>
#include <dcc/quadrature.hpp>
#include <dcc/su2.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace dcc {

/// Orthogonality residual accepted when certifying a design.
inline constexpr double design_tolerance = 1e-9;

/// Largest N for which dense operators on the signal subspace are formed.
inline constexpr int max_explicit_spins = 4;

struct DesignPoint {
    Rotation g;
    double weight = 0.0;
};

struct FinitePovm {
    int n_spins = 1;
    int j_max_twice = 3;  // 2J with J = N/2 + 1
    std::vector<DesignPoint> points;

    std::size_t size() const { return points.size(); }

    double weight_sum() const {
        double s = 0.0;
        for (const auto& p : points) s += p.weight;
        return s;
    }

    /// Divides all weights by their sum.
    void normalize() {
        const double s = weight_sum();
        if (!(s > 0.0)) throw InvalidArgument("FinitePovm: weights must have positive sum");
        for (auto& p : points) p.weight /= s;
    }
};

struct DesignReport {
    double max_residual = 0.0;
    long long pairs_checked = 0;
    int j_max_twice = 0;
};

/// |Psi> with blocks sqrt(d_j) * I; deliberately not normalized.
inline BlockState seed_state(int n_spins) {
    BlockState psi{IrrepSpectrum(n_spins)};
    for (int k = 0; k < psi.spectrum.size(); ++k) {
        const int d = psi.spectrum[k].dim();
        psi.blocks[k] = std::sqrt(static_cast<double>(d)) * Eigen::MatrixXcd::Identity(d, d);
    }
    return psi;
}

namespace detail {

// Irreps 2j <= twoJ_max sharing the parity of twoJ_max.
inline std::vector<IrrepLabel> parity_family(int twoJ_max) {
    std::vector<IrrepLabel> out;
    for (int t = twoJ_max % 2; t <= twoJ_max; t += 2) out.push_back(IrrepLabel{t});
    return out;
}

// Stacked vec(D^j(g)), each block row-major over (m, m').
inline void stack_wigner(const std::vector<IrrepLabel>& family, const Rotation& g,
                         Eigen::Ref<Eigen::VectorXcd> out) {
    Eigen::Index pos = 0;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const Eigen::MatrixXcd d = wigner_D(family[k], g).matrix;
        for (Eigen::Index r = 0; r < d.rows(); ++r)
            for (Eigen::Index c = 0; c < d.cols(); ++c) out(pos++) = d(r, c);
    }
}

// sum_r c_r v_r v_r^dagger accumulated in column chunks.
inline Eigen::MatrixXcd weighted_gram(const FinitePovm& povm,
                                      const std::vector<IrrepLabel>& family) {
    int dim = 0;
    for (auto l : family) dim += l.dim() * l.dim();
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(dim, dim);
    constexpr std::size_t chunk = 512;
    Eigen::MatrixXcd cols(dim, static_cast<Eigen::Index>(chunk));
    for (std::size_t start = 0; start < povm.points.size(); start += chunk) {
        const std::size_t count = std::min(chunk, povm.points.size() - start);
        for (std::size_t i = 0; i < count; ++i) {
            const auto& p = povm.points[start + i];
            if (!(p.weight >= 0.0)) throw InvalidArgument("FinitePovm: negative weight");
            stack_wigner(family, p.g, cols.col(static_cast<Eigen::Index>(i)));
            cols.col(static_cast<Eigen::Index>(i)) *= std::sqrt(p.weight);
        }
        const auto block = cols.leftCols(static_cast<Eigen::Index>(count));
        gram.noalias() += block * block.adjoint();
    }
    return gram;
}

}  // namespace detail

/// Max deviation of the weighted points from Haar orthogonality of D^j, D^l
/// over all same-parity 2j, 2l <= j_max_twice and all index quadruples.
/// Weights are used as given (C_J = 1 is assumed, not enforced).
inline DesignReport verify_design(const FinitePovm& povm, int j_max_twice) {
    if (j_max_twice < 0) throw InvalidArgument("verify_design: j_max_twice must be >= 0");
    const auto family = detail::parity_family(j_max_twice);
    const Eigen::MatrixXcd gram = detail::weighted_gram(povm, family);

    Eigen::VectorXd expected(gram.rows());
    Eigen::Index pos = 0;
    for (auto l : family)
        for (int i = 0; i < l.dim() * l.dim(); ++i) expected(pos++) = 1.0 / l.dim();

    Eigen::MatrixXcd defect = gram;
    defect.diagonal() -= expected.cast<std::complex<double>>();
    return {defect.cwiseAbs().maxCoeff(), static_cast<long long>(gram.size()), j_max_twice};
}

/// Product Euler grid: uniform alpha and gamma with 2*(2J)+1 points each,
/// Gauss-Legendre nodes in cos(beta) with ceil(J)+1 points, J = N/2 + 1.
/// Throws CertificationError if the orthogonality residual exceeds 1e-9.
inline FinitePovm build_product_design(int n_spins) {
    if (n_spins < 1) throw InvalidArgument("number of spins must be >= 1");
    FinitePovm povm;
    povm.n_spins = n_spins;
    povm.j_max_twice = n_spins + 2;
    const int n_uniform = 2 * povm.j_max_twice + 1;
    const int n_beta = (povm.j_max_twice + 1) / 2 + 1;
    const GaussLegendre rule = gauss_legendre(n_beta);

    povm.points.reserve(static_cast<std::size_t>(n_uniform) * n_uniform * n_beta);
    for (int a = 0; a < n_uniform; ++a) {
        const double alpha = two_pi * a / n_uniform;
        for (int b = 0; b < n_beta; ++b) {
            const double beta = std::acos(rule.nodes[b]);
            for (int c = 0; c < n_uniform; ++c) {
                const double gamma = two_pi * c / n_uniform;
                povm.points.push_back(
                    {Rotation::from_euler({alpha, beta, gamma}).canonical(), rule.weights[b]});
            }
        }
    }
    povm.normalize();

    const DesignReport report = verify_design(povm, povm.j_max_twice);
    if (!(report.max_residual <= design_tolerance))
        throw CertificationError("product design for N = " + std::to_string(n_spins) +
                                 " has residual " + std::to_string(report.max_residual));
    return povm;
}

/// Design with every point left-multiplied by g0.
inline FinitePovm left_translate(const FinitePovm& povm, const Rotation& g0) {
    FinitePovm out = povm;
    for (auto& p : out.points) p.g = g0 * p.g;
    return out;
}

/// ||sum_r O_r - I||_max on the explicit signal subspace (dimension sum_j d_j^2).
inline double completeness_check(int n_spins, const FinitePovm& povm) {
    if (n_spins < 1) throw InvalidArgument("number of spins must be >= 1");
    if (n_spins > max_explicit_spins)
        throw DimensionGuard("completeness_check: explicit operators limited to N <= " +
                             std::to_string(max_explicit_spins));
    const BlockState psi = seed_state(n_spins);
    const Eigen::Index dim = psi.spectrum.signal_dimension();
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& p : povm.points) {
        const Eigen::VectorXcd v = rotate_alice(psi, p.g).to_vector();
        total.noalias() += p.weight * (v * v.adjoint());
    }
    total.diagonal().array() -= 1.0;
    return total.cwiseAbs().maxCoeff();
}

}  // namespace dcc
