#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "drchaos/errors.hpp"

namespace drchaos::detail {

struct GaussRule {
    std::vector<double> x;  ///< nodes on [-1, 1], ascending
    std::vector<double> w;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
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
        rule.x[n - 1 - i] = x;
        rule.w[n - 1 - i] = w;
        rule.x[i] = -x;
        rule.w[i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

/// Adaptive 15-point Gauss-Kronrod on [a, b]; F may return double or std::complex<double>.
template <class F>
auto adaptive_gk(F&& f, double a, double b, double rel_tol, unsigned max_depth = 20) {
    double err = 0.0;
    double l1 = 0.0;
    auto val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
    if (!std::isfinite(std::abs(val))) throw ContractError("adaptive quadrature produced a non-finite value");
    return val;
}

}  // namespace drchaos::detail
