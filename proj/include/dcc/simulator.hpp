#pragma once

/**
 * @file simulator.hpp
 * @brief Signal states, outcome probabilities of the covariant measurement,
 * seeded Monte Carlo runs of the alignment protocol, and two numerical
 * witnesses: the class-angle quadrature of <chi_1> and the multiplicity check.
 *
 * Outcome probabilities come in two flavours. The character path uses
 *   <Psi(g_r)|Phi(g)> = sum_j a_j chi_j(g_r^{-1} g),
 * the explicit path materializes both states as vectors of length
 * sum_j d_j^2 (basis ordering of BlockState::to_vector) and takes the dense
 * inner product. They are kept separate so one can check the other.
 */

#include <dcc/block_state.hpp>
#include <dcc/error.hpp>
#include <dcc/optimal_state.hpp>
#include <dcc/povm.hpp>
#include <dcc/quadrature.hpp>
#include <dcc/su2.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace dcc {

/// |Phi(g)> = (U_A(g) x 1_B) |Phi>, blocks (a_j / sqrt(d_j)) D^j(g).
inline BlockState signal_state(const CoefficientVector& coeffs, const Rotation& g) {
    BlockState phi{coeffs.spectrum};
    for (int k = 0; k < phi.spectrum.size(); ++k) {
        const IrrepLabel j = phi.spectrum[k];
        phi.blocks[k] = (coeffs.a(k) / std::sqrt(static_cast<double>(j.dim()))) *
                        wigner_D(j, g).matrix;
    }
    return phi;
}

/// <Psi(gr)|Phi(g)> = sum_j a_j chi_j(gr^{-1} g). Characters are evaluated as
/// U_{2j}(cos(omega/2)) in a single Chebyshev sweep, cos(omega/2) being the
/// scalar part of gr^{-1} g.
inline double amplitude(const CoefficientVector& coeffs, const Rotation& gr, const Rotation& g) {
    const double c = std::clamp(relative_w(gr, g), -1.0, 1.0);
    const int n = coeffs.n_spins();
    // Labels run 2j = n, n-2, ...; index k holds 2j = n - 2k.
    double acc = 0.0;
    double prev = 0.0, cur = 1.0;  // U_{-1}, U_0
    for (int deg = 0; deg <= n; ++deg) {
        if ((n - deg) % 2 == 0) acc += coeffs.a((n - deg) / 2) * cur;
        const double next = 2.0 * c * cur - prev;
        prev = cur;
        cur = next;
    }
    return acc;
}

/// p_r = c_r * amplitude(g_r, g)^2 for every design point.
inline std::vector<double> outcome_probabilities(const CoefficientVector& coeffs,
                                                 const FinitePovm& povm, const Rotation& g) {
    std::vector<double> p(povm.size());
    for (std::size_t r = 0; r < povm.size(); ++r) {
        const double amp = amplitude(coeffs, povm.points[r].g, g);
        p[r] = povm.points[r].weight * amp * amp;
    }
    return p;
}

/// Brute-force p(r|g) from dense state vectors; N <= 4 only.
inline double explicit_probability(const CoefficientVector& coeffs, const FinitePovm& povm,
                                   std::size_t r, const Rotation& g) {
    if (coeffs.n_spins() > max_explicit_spins)
        throw DimensionGuard("explicit_probability: limited to N <= " +
                             std::to_string(max_explicit_spins));
    if (r >= povm.size()) throw InvalidArgument("explicit_probability: outcome index out of range");
    const Eigen::VectorXcd phi = signal_state(coeffs, g).to_vector();
    const Eigen::VectorXcd psi =
        rotate_alice(seed_state(coeffs.n_spins()), povm.points[r].g).to_vector();
    return povm.points[r].weight * std::norm(psi.dot(phi));  // dot conjugates psi
}

struct SimulationSummary {
    int n_spins = 0;
    long long trials = 0;
    std::uint64_t seed = 0;
    std::size_t design_size = 0;
    double mean_h = 0.0;
    std::optional<double> stderr_h;  // undefined for a single trial
    double analytic_h = 0.0;
    std::optional<double> z_score;

    friend bool operator==(const SimulationSummary&, const SimulationSummary&) = default;
};

namespace detail {

// Running (count, mean, M2); merge is Chan's pairwise update.
struct Moments {
    long long count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double n = static_cast<double>(count + o.count);
        const double delta = o.mean - mean;
        mean += delta * static_cast<double>(o.count) / n;
        m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
        count += o.count;
    }
};

inline constexpr long long shard_trials = 4096;

inline std::mt19937_64 shard_stream(std::uint64_t seed, std::uint64_t shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
    return std::mt19937_64(seq);
}

inline Moments run_shard(const CoefficientVector& coeffs, const FinitePovm& povm,
                         long long count, std::uint64_t seed, std::uint64_t shard) {
    auto rng = shard_stream(seed, shard);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> cumulative(povm.size());
    Moments m;
    for (long long t = 0; t < count; ++t) {
        const Rotation g = haar_sample(rng);
        double total = 0.0;
        for (std::size_t r = 0; r < povm.size(); ++r) {
            const double amp = amplitude(coeffs, povm.points[r].g, g);
            total += povm.points[r].weight * amp * amp;
            cumulative[r] = total;
        }
        const double u = unit(rng) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        const auto r = static_cast<std::size_t>(it - cumulative.begin());
        m.add(holevo_error(g, povm.points[r].g));
    }
    return m;
}

}  // namespace detail

/// Monte Carlo estimate of the averaged Holevo error: g is Haar-sampled, an
/// outcome r is drawn from p(r|g) and Bob's guess is g_r. Trials are split in
/// fixed-size shards with per-shard streams derived from (seed, shard index),
/// so the result does not depend on `threads`.
inline SimulationSummary run_trials(const CoefficientVector& coeffs, const FinitePovm& povm,
                                    long long trials, std::uint64_t seed, int threads = 1) {
    if (trials < 1) throw InvalidArgument("run_trials: trials must be >= 1");
    if (povm.points.empty()) throw InvalidArgument("run_trials: empty design");
    if (povm.n_spins != coeffs.n_spins())
        throw InvalidArgument("run_trials: design and coefficients disagree on N");

    const long long n_shards = (trials + detail::shard_trials - 1) / detail::shard_trials;
    std::vector<detail::Moments> shards(static_cast<std::size_t>(n_shards));
    std::atomic<long long> next{0};
    auto worker = [&] {
        for (long long s; (s = next.fetch_add(1)) < n_shards;) {
            const long long count = std::min(detail::shard_trials, trials - s * detail::shard_trials);
            shards[static_cast<std::size_t>(s)] =
                detail::run_shard(coeffs, povm, count, seed, static_cast<std::uint64_t>(s));
        }
    };
    const int n_threads = static_cast<int>(std::clamp<long long>(threads, 1, n_shards));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }

    detail::Moments total;
    for (const auto& s : shards) total.merge(s);

    SimulationSummary out;
    out.n_spins = coeffs.n_spins();
    out.trials = trials;
    out.seed = seed;
    out.design_size = povm.size();
    out.mean_h = total.mean;
    out.analytic_h = analytic_error(coeffs);
    if (trials > 1) {
        const double var = total.m2 / static_cast<double>(trials - 1);
        out.stderr_h = std::sqrt(var / static_cast<double>(trials));
        if (*out.stderr_h > 0.0) out.z_score = (out.mean_h - out.analytic_h) / *out.stderr_h;
    }
    return out;
}

/// Haar average of chi_1 (sum_j a_j chi_j)^2 by Gauss-Legendre over the
/// class angle, using the cosine-sum characters.
inline double chi1_quadrature(const CoefficientVector& coeffs) {
    if (std::abs(coeffs.norm_squared() - 1.0) > 1e-9)
        throw InvalidArgument("chi1_quadrature: coefficient vector must have unit norm");
    const int nodes = std::max(64, 4 * (coeffs.n_spins() + 2));
    const auto& labels = coeffs.spectrum.labels();
    return integrate_class_function(
        [&](double omega) {
            double s = 0.0;
            for (std::size_t k = 0; k < labels.size(); ++k)
                s += coeffs.a(static_cast<Eigen::Index>(k)) * character(labels[k], omega);
            return character(IrrepLabel{2}, omega) * s * s;
        },
        nodes);
}

/// Number of copies of irrep j in the N-fold tensor product of spin 1/2.
inline long long irrep_multiplicity(int n_spins, IrrepLabel j) {
    if (j.twoJ > n_spins || (n_spins - j.twoJ) % 2 != 0) return 0;
    const int k = (n_spins - j.twoJ) / 2;
    auto binom = [](int n, int r) -> long long {
        if (r < 0 || r > n) return 0;
        long long b = 1;
        for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
        return b;
    };
    return binom(n_spins, k) - binom(n_spins, k - 1);
}

/// |<Omega^j| U_A(g) x 1_B |Omega_{v,m}>| with explicit dense matrices, where
/// |Omega^j> = (d_j n_j)^{-1/2} sum_{m,alpha} |j m; alpha>|j m; alpha> and
/// |Omega_{v,m}> = sum_alpha v_alpha |j m; alpha>|j m; alpha>, n_j = v.size().
/// Alice's basis index is (m, alpha) -> m_index * n_j + alpha.
inline double multiplicity_overlap(IrrepLabel j, std::span<const std::complex<double>> v,
                                   const Rotation& g, int m_index) {
    const int d = j.dim();
    const int nj = static_cast<int>(v.size());
    if (nj < 1) throw InvalidArgument("multiplicity_overlap: empty multiplicity vector");
    if (m_index < 0 || m_index >= d) throw InvalidArgument("multiplicity_overlap: m out of range");
    const int dim = d * nj;

    const Eigen::MatrixXcd dj = wigner_D(j, g).matrix;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);  // D^j x 1_{n_j}
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int alpha = 0; alpha < nj; ++alpha) u(a * nj + alpha, b * nj + alpha) = dj(a, b);

    // Coefficient matrices C with state sum C_{pq} |p>_A |q>_B.
    const Eigen::MatrixXcd omega =
        Eigen::MatrixXcd::Identity(dim, dim) / std::sqrt(static_cast<double>(dim));
    Eigen::MatrixXcd omega_vm = Eigen::MatrixXcd::Zero(dim, dim);
    for (int alpha = 0; alpha < nj; ++alpha)
        omega_vm(m_index * nj + alpha, m_index * nj + alpha) = v[static_cast<std::size_t>(alpha)];

    return std::abs((omega.adjoint() * (u * omega_vm)).trace());
}

/// Max overlap over 20 Haar rotations, every irrep with n_j > 1, every unit v
/// of a random orthonormal basis of the complement of (1, ..., 1), and every m.
/// Valid for 3 <= N <= 4.
template <std::uniform_random_bit_generator Rng>
double multiplicity_check(int n_spins, Rng& rng) {
    if (n_spins < 3 || n_spins > 4)
        throw InvalidArgument("multiplicity_check: requires 3 <= N <= 4");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Rotation> rotations;
    for (int i = 0; i < 20; ++i) rotations.push_back(haar_sample(rng));

    double worst = 0.0;
    const IrrepSpectrum spectrum(n_spins);
    for (auto j : spectrum.labels()) {
        const auto nj = static_cast<int>(irrep_multiplicity(n_spins, j));
        if (nj < 2) continue;
        // Orthonormal basis starting from (1, ..., 1)/sqrt(n_j); keep the rest.
        std::vector<Eigen::VectorXcd> basis{Eigen::VectorXcd::Ones(nj) / std::sqrt(double(nj))};
        while (static_cast<int>(basis.size()) < nj) {
            Eigen::VectorXcd cand(nj);
            for (int i = 0; i < nj; ++i) cand(i) = {normal(rng), normal(rng)};
            for (const auto& b : basis) cand -= b.dot(cand) * b;
            if (cand.norm() < 1e-6) continue;
            basis.push_back(cand.normalized());
        }
        for (std::size_t s = 1; s < basis.size(); ++s) {
            const std::span<const std::complex<double>> v(basis[s].data(),
                                                          static_cast<std::size_t>(nj));
            for (const auto& g : rotations)
                for (int m = 0; m < j.dim(); ++m)
                    worst = std::max(worst, multiplicity_overlap(j, v, g, m));
        }
    }
    return worst;
}

}  // namespace dcc
