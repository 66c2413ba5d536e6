#pragma once

/**
 * @file su2.hpp
 * @brief SU(2) primitives: unit quaternions, ZYZ Euler angles, Haar
 * sampling, characters, Wigner matrices and the Holevo frame error.
 *
 * Convention: a rotation g acts in irrep j as
 *   U(g) = exp(-i alpha J_z) exp(-i beta J_y) exp(-i gamma J_z),
 * so that D^j_{m'm}(g) = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma).
 * Rows and columns of every matrix are indexed by m = j, j-1, ..., -j.
 * The unit quaternion q = (w, x, y, z) maps to the spin-1/2 matrix
 *   [[w - iz, -y - ix], [y - ix, w + iz]].
 */

#include <dcc/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <utility>

namespace dcc {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Largest 2j accepted by the small-d evaluator.
inline constexpr int max_twoJ = 64;

/// Irrep label j stored as the exact integer 2j.
struct IrrepLabel {
    int twoJ = 0;

    constexpr int dim() const { return twoJ + 1; }
    constexpr double j() const { return 0.5 * twoJ; }
    /// Magnetic number of row/column index i (i = 0 is m = j).
    constexpr double m(int i) const { return 0.5 * (twoJ - 2 * i); }

    friend constexpr bool operator==(IrrepLabel, IrrepLabel) = default;
};

struct EulerZYZ {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Element of SU(2) stored as a unit quaternion (w, x, y, z).
class Rotation {
public:
    Rotation() = default;

    static Rotation identity() { return {}; }

    /// Normalizes the input; rejects a zero or non-finite quaternion.
    static Rotation from_quaternion(double w, double x, double y, double z) {
        const double n = std::sqrt(w * w + x * x + y * y + z * z);
        if (!(n > 0.0) || !std::isfinite(n))
            throw InvalidArgument("Rotation: quaternion must be finite and nonzero");
        return Rotation(w / n, x / n, y / n, z / n);
    }

    static Rotation from_quaternion(const std::array<double, 4>& q) {
        return from_quaternion(q[0], q[1], q[2], q[3]);
    }

    /// Rotation by `angle` about the (not necessarily unit) axis.
    static Rotation from_axis_angle(double ax, double ay, double az, double angle) {
        const double n = std::sqrt(ax * ax + ay * ay + az * az);
        if (!(n > 0.0)) throw InvalidArgument("Rotation: zero rotation axis");
        const double s = std::sin(0.5 * angle) / n;
        return from_quaternion(std::cos(0.5 * angle), s * ax, s * ay, s * az);
    }

    static Rotation from_euler(const EulerZYZ& e) {
        const double cb = std::cos(0.5 * e.beta);
        const double sb = std::sin(0.5 * e.beta);
        const double sum = 0.5 * (e.alpha + e.gamma);
        const double diff = 0.5 * (e.gamma - e.alpha);
        return from_quaternion(cb * std::cos(sum), sb * std::sin(diff), sb * std::cos(diff),
                               cb * std::sin(sum));
    }

    double w() const { return w_; }
    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }
    std::array<double, 4> quaternion() const { return {w_, x_, y_, z_}; }

    /// Hamilton product; (a * b) applies b first.
    friend Rotation operator*(const Rotation& a, const Rotation& b) {
        return from_quaternion(a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_,
                               a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_,
                               a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_,
                               a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_);
    }

    Rotation inverse() const { return Rotation(w_, -x_, -y_, -z_); }
    Rotation negated() const { return Rotation(-w_, -x_, -y_, -z_); }

    /// Representative on the w >= 0 hemisphere (same SO(3) rotation).
    Rotation canonical() const { return w_ < 0.0 ? negated() : *this; }

    /// Scalar part of inverse(a) * b, i.e. the 4-vector dot product.
    friend double relative_w(const Rotation& a, const Rotation& b) {
        return a.w_ * b.w_ + a.x_ * b.x_ + a.y_ * b.y_ + a.z_ * b.z_;
    }

    /// ZYZ angles with alpha, gamma in [0, 2pi) and beta in [0, pi].
    EulerZYZ to_euler() const {
        const auto h = half_angles();
        return {wrap(h.sum + h.diff), h.beta, wrap(h.sum - h.diff)};
    }

    /// Half-angle form used to evaluate D^j without losing the SU(2) sign:
    /// alpha = sum + diff and gamma = sum - diff reproduce q exactly.
    struct HalfAngles {
        double sum;
        double diff;
        double beta;
    };

    HalfAngles half_angles() const {
        const double c = std::hypot(w_, z_);
        const double s = std::hypot(x_, y_);
        return {std::atan2(z_, w_), std::atan2(-x_, y_), 2.0 * std::atan2(s, c)};
    }

private:
    Rotation(double w, double x, double y, double z) : w_(w), x_(x), y_(y), z_(z) {}

    static double wrap(double a) {
        a = std::fmod(a, two_pi);
        if (a < 0.0) a += two_pi;
        if (a >= two_pi) a = 0.0;
        return a;
    }

    double w_ = 1.0;
    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 0.0;
};

/// Haar-distributed rotation: four Gaussians normalized onto S^3, folded to w >= 0.
template <std::uniform_random_bit_generator Rng>
Rotation haar_sample(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        const double w = normal(rng), x = normal(rng), y = normal(rng), z = normal(rng);
        if (w * w + x * x + y * y + z * z > 1e-300)
            return Rotation::from_quaternion(w, x, y, z).canonical();
    }
}

/// Class angle omega in [0, 2pi]; omega/2 is the arccos of the scalar part.
inline double class_angle(const Rotation& g) {
    return 2.0 * std::acos(std::clamp(g.w(), -1.0, 1.0));
}

/// chi_j(omega) as the cosine sum over m = -j..j.
inline double character(IrrepLabel j, double omega) {
    double acc = 0.0;
    for (int k = 0; k <= j.twoJ; ++k) acc += std::cos(j.m(k) * omega);
    return acc;
}

/// chi_j as a polynomial in cos(omega/2): chi_j = U_{2j}(c), Chebyshev of the
/// second kind. Equal to `character` for c = cos(omega/2); used on hot paths
/// where c is a quaternion dot product.
inline double character_from_half_cos(IrrepLabel j, double c) {
    c = std::clamp(c, -1.0, 1.0);
    double prev = 1.0;
    if (j.twoJ == 0) return prev;
    double cur = 2.0 * c;
    for (int k = 2; k <= j.twoJ; ++k) {
        const double next = 2.0 * c * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// (chi_{1/2}(omega)^2, 1 + chi_1(omega)); the two are identical functions.
inline std::pair<double, double> character_sq_identity(double omega) {
    const double half = character(IrrepLabel{1}, omega);
    return {half * half, 1.0 + character(IrrepLabel{2}, omega)};
}

namespace detail {

inline const std::array<double, max_twoJ + 1>& log_factorials() {
    static const auto table = [] {
        std::array<double, max_twoJ + 1> t{};
        for (int n = 0; n <= max_twoJ; ++n) t[n] = std::lgamma(n + 1.0);
        return t;
    }();
    return table;
}

inline void check_degree(IrrepLabel j) {
    if (j.twoJ < 0) throw InvalidArgument("irrep label must be non-negative");
    if (j.twoJ > max_twoJ)
        throw DegreeOverflow("small-d matrix supports 2j <= " + std::to_string(max_twoJ) +
                             ", got 2j = " + std::to_string(j.twoJ));
}

}  // namespace detail

/// Real small Wigner matrix d^j(beta), factorial-sum formula with log-factorials.
inline Eigen::MatrixXd wigner_d_beta(IrrepLabel j, double beta) {
    detail::check_degree(j);
    const auto& lf = detail::log_factorials();
    const int dim = j.dim();
    const int tj = j.twoJ;
    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);

    Eigen::MatrixXd d(dim, dim);
    // Work with integer offsets: j+m' = tj - row, j+m = tj - col.
    for (int row = 0; row < dim; ++row) {
        const int jpmp = tj - row, jmmp = row;  // j+m', j-m'
        for (int col = 0; col < dim; ++col) {
            const int jpm = tj - col, jmm = col;  // j+m, j-m
            const int mp_minus_m = col - row;     // m' - m
            const double norm = 0.5 * (lf[jpmp] + lf[jmmp] + lf[jpm] + lf[jmm]);
            const int s_lo = std::max(0, -mp_minus_m);
            const int s_hi = std::min(jpm, jmmp);
            double acc = 0.0;
            for (int k = s_lo; k <= s_hi; ++k) {
                const double mag =
                    std::exp(norm - lf[jpm - k] - lf[k] - lf[mp_minus_m + k] - lf[jmmp - k]);
                const int cos_pow = tj - mp_minus_m - 2 * k;
                const int sin_pow = mp_minus_m + 2 * k;
                const double sign = ((mp_minus_m + k) % 2 == 0) ? 1.0 : -1.0;
                acc += sign * mag * std::pow(c, cos_pow) * std::pow(s, sin_pow);
            }
            d(row, col) = acc;
        }
    }
    return d;
}

/// D^j(g) together with its irrep label.
struct WignerBlock {
    IrrepLabel j;
    Eigen::MatrixXcd matrix;
};

inline WignerBlock wigner_D(IrrepLabel j, const Rotation& g) {
    const auto h = g.half_angles();
    const double alpha = h.sum + h.diff;
    const double gamma = h.sum - h.diff;
    const Eigen::MatrixXd d = wigner_d_beta(j, h.beta);
    const int dim = j.dim();

    Eigen::VectorXcd left(dim), right(dim);
    for (int i = 0; i < dim; ++i) {
        left(i) = std::polar(1.0, -j.m(i) * alpha);
        right(i) = std::polar(1.0, -j.m(i) * gamma);
    }
    WignerBlock out{j, Eigen::MatrixXcd(dim, dim)};
    out.matrix = left.asDiagonal() * d.cast<std::complex<double>>() * right.asDiagonal();
    return out;
}

/// Proper orthogonal matrix whose columns are the images of the x, y, z axes.
inline Eigen::Matrix3d rotation_to_matrix(const Rotation& g) {
    const double w = g.w(), x = g.x(), y = g.y(), z = g.z();
    Eigen::Matrix3d r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
        2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
        2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

/// Holevo error between the trihedra of g and gr: sum of squared axis distances.
inline double holevo_error(const Rotation& g, const Rotation& gr) {
    const Eigen::Matrix3d a = rotation_to_matrix(g);
    const Eigen::Matrix3d b = rotation_to_matrix(gr);
    return (a - b).colwise().squaredNorm().sum();
}

/// Same quantity through the character: 6 - 2 chi_1(gr^{-1} g).
inline double holevo_error_character(const Rotation& g, const Rotation& gr) {
    return 6.0 - 2.0 * character(IrrepLabel{2}, class_angle(gr.inverse() * g));
}

}  // namespace dcc
