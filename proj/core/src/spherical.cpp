#include "drchaos/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "drchaos/errors.hpp"
#include "quadrature.hpp"

namespace drchaos {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Integrates g(u, v) u^{m-1} v^{l-1} over (0, inf)^2 (or g(u) u^{m-1} when l = 0) with
// u = su tan(theta) and v = sv(u) tan(psi).
template <class G, class SV>
auto integrate_nv(const DRSpaceParams& p, double su, SV&& sv, G&& g, double rel_tol) {
    const int m = p.m();
    const int l = p.l();
    auto outer = [&](double theta) {
        using R = decltype(g(0.0, 0.0));
        if (theta >= kHalfPi) return R(0.0);
        const double c = std::cos(theta);
        const double u = su * std::tan(theta);
        const double du = su / (c * c);
        const double jac = du * std::pow(u, m - 1);
        if (l == 0) return R(jac * g(u, 0.0));
        const double s = sv(u);
        auto inner = [&](double psi) {
            if (psi >= kHalfPi) return R(0.0);
            const double cp = std::cos(psi);
            const double v = s * std::tan(psi);
            return R((s / (cp * cp)) * std::pow(v, l - 1) * g(u, v));
        };
        return R(jac * detail::adaptive_gk(inner, 0.0, kHalfPi, rel_tol, 15));
    };
    return detail::adaptive_gk(outer, 0.0, kHalfPi, rel_tol, 15);
}

// log of e^{Q t} ((e^t + u^2/4)^2 + v^2)^{-Q}
double log_kernel(double t, double u, double v, double Q) {
    const double a = std::exp(t) + 0.25 * u * u;
    return Q * t - Q * std::log(a * a + v * v);
}

double sphere_factor(const DRSpaceParams& p) {
    double f = unit_sphere_area(p.m());
    if (p.l() > 0) f *= unit_sphere_area(p.l());
    return f;
}

}  // namespace

double unit_sphere_area(int k) {
    if (k < 1) throw DomainError("unit_sphere_area needs k >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k);
}

double poisson_kernel(double t, double u, double v, const DRSpaceParams& p, double c_norm) {
    if (u < 0.0 || v < 0.0) throw DomainError("poisson_kernel needs u, v >= 0");
    return c_norm * std::exp(log_kernel(t, u, v, p.Q()));
}

double normalize_poisson(const DRSpaceParams& p, double rel_tol) {
    const double Q = p.Q();
    auto g = [&](double u, double v) { return std::exp(log_kernel(0.0, u, v, Q)); };
    auto sv = [](double u) { return 1.0 + 0.25 * u * u; };
    const double total = sphere_factor(p) * integrate_nv(p, 2.0, sv, g, rel_tol);
    return 1.0 / total;
}

cplx phi_via_integral(cplx lambda, double t, const DRSpaceParams& p, const IntegralOptions& opt) {
    const double rho = p.rho();
    if (std::abs(lambda.imag()) > rho * (1.0 - opt.guard)) {
        std::ostringstream os;
        os << "|Im lambda| = " << std::abs(lambda.imag()) << " exceeds " << rho * (1.0 - opt.guard)
           << " for the integral representation; use phi_via_ode";
        throw DomainError(os.str());
    }
    const double Q = p.Q();
    const double C = normalize_poisson(p);
    const cplx I(0.0, 1.0);
    const cplx at = 0.5 - I * lambda / Q;
    const cplx a0 = 0.5 + I * lambda / Q;
    const double et = std::exp(t);
    auto g = [&](double u, double v) {
        return std::exp(at * log_kernel(t, u, v, Q) + a0 * log_kernel(0.0, u, v, Q));
    };
    // Scales centred between the two kernels.
    const double su = 2.0 * std::exp(0.25 * t);
    auto sv = [&](double u) { return std::sqrt((et + 0.25 * u * u) * (1.0 + 0.25 * u * u)); };
    return C * sphere_factor(p) * integrate_nv(p, su, sv, g, opt.rel_tol);
}

RadialProfile phi_via_ode(cplx lambda, const GridPtr& grid, const OdeOptions& opt) {
    auto sol = solve_radial(lambda, grid->params(), grid->r(), opt);
    return RadialProfile(grid, std::move(sol.u));
}

std::vector<cplx> phi_values(cplx lambda, const DRSpaceParams& p, std::span<const double> radii,
                             const OdeOptions& opt) {
    std::vector<double> sorted(radii.begin(), radii.end());
    for (auto& r : sorted) r = std::abs(r);  // phi is even in r
    std::vector<std::size_t> order(sorted.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sorted[a] < sorted[b]; });
    std::vector<double> pts(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) pts[i] = sorted[order[i]];
    const auto sol = solve_radial(lambda, p, pts, opt);
    std::vector<cplx> out(radii.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = sol.u[i];
    return out;
}

double eigen_residual(cplx lambda, const DRSpaceParams& p, std::span<const double> radii, double h,
                      const OdeOptions& opt) {
    if (!(h > 0.0)) throw DomainError("eigen_residual needs h > 0");
    std::vector<double> pts;
    pts.reserve(5 * radii.size());
    for (double r : radii) {
        if (!(r > 2.0 * h)) throw DomainError("eigen_residual radii must exceed 2h");
        for (int j = -2; j <= 2; ++j) pts.push_back(r + j * h);
    }
    const auto u = phi_values(lambda, p, pts, opt);
    const cplx E = lambda * lambda + p.rho() * p.rho();
    double worst = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const cplx* s = &u[5 * i];
        const cplx d1 = (s[0] - 8.0 * s[1] + 8.0 * s[3] - s[4]) / (12.0 * h);
        const cplx d2 = (-s[0] + 16.0 * s[1] - 30.0 * s[2] + 16.0 * s[3] - s[4]) / (12.0 * h * h);
        const double D = density_log_derivative(radii[i], p);
        const cplx res = d2 + D * d1 + E * s[2];
        const double scale = std::abs(d2) + std::abs(D * d1) + std::abs(E * s[2]);
        worst = std::max(worst, scale > 0.0 ? std::abs(res) / scale : 0.0);
    }
    return worst;
}

DecayFit decay_rate(double alpha, double p, const DRSpaceParams& params, double r_lo, double r_hi) {
    if (!(p > 0.0 && p < 2.0)) throw DomainError("decay_rate needs 0 < p < 2");
    if (!(r_lo > 0.0 && r_hi > r_lo)) throw DomainError("decay_rate needs 0 < r_lo < r_hi");
    const double rho = params.rho();
    const double gamma = 2.0 / p - 1.0;
    const cplx lambda(alpha, gamma * rho);
    constexpr int n = 241;
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = r_lo + (r_hi - r_lo) * i / (n - 1);
    const auto phi = phi_values(lambda, params, r);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double y = std::log(std::abs(phi[i]));
        sx += r[i];
        sy += y;
        sxx += r[i] * r[i];
        sxy += r[i] * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double p_prime = p / (p - 1.0);
    return {slope, -2.0 * rho / p_prime};
}

}  // namespace drchaos
