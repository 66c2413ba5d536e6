#pragma once

// Gauss-Legendre rules on [-1, 1] and the Haar class-angle integral.

#include <dcc/error.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace dcc {

struct GaussLegendre {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // sum to 2
};

/// n-point rule, exact for polynomials of degree <= 2n - 1.
inline GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
    GaussLegendre rule{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

/// Haar average of a class function f(omega):
/// (1/pi) * integral_0^{2pi} f(omega) sin^2(omega/2) d omega, by an n-node rule.
template <class F>
double integrate_class_function(F&& f, int n) {
    const GaussLegendre rule = gauss_legendre(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double omega = std::numbers::pi * (rule.nodes[i] + 1.0);
        const double s = std::sin(0.5 * omega);
        acc += rule.weights[i] * f(omega) * s * s;
    }
    // d omega = pi dx cancels the 1/pi prefactor
    return acc;
}

}  // namespace dcc
