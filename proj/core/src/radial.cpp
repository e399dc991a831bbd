#include "drchaos/radial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "drchaos/errors.hpp"
#include "quadrature.hpp"

namespace drchaos {

double log_volume_density(double r, const DRSpaceParams& p) {
    if (!(r > 0.0)) throw DomainError("log_volume_density needs r > 0");
    const double h = 0.5 * r;
    // log sinh(h) = h + log((1 - e^{-2h}) / 2), log cosh(h) = h + log((1 + e^{-2h}) / 2)
    const double e = std::exp(-2.0 * h);
    const double log_sinh = h + std::log(-std::expm1(-2.0 * h) * 0.5);
    const double log_cosh = h + std::log1p(e) - std::log(2.0);
    const int ml = p.m() + p.l();
    return ml * std::log(2.0) + ml * log_sinh + p.l() * log_cosh;
}

double volume_density(double r, const DRSpaceParams& p) {
    if (r == 0.0) return 0.0;
    return std::exp(log_volume_density(r, p));
}

double density_log_derivative(double r, const DRSpaceParams& p) {
    if (!(r > 0.0)) throw DomainError("density_log_derivative needs r > 0");
    // coth(r/2) = (1 + e^{-r}) / (1 - e^{-r}), tanh(r/2) = (1 - e^{-r}) / (1 + e^{-r})
    const double em1 = -std::expm1(-r);  // 1 - e^{-r}
    const double ep1 = 2.0 - em1;        // 1 + e^{-r}
    return 0.5 * (p.m() + p.l()) * ep1 / em1 + 0.5 * p.l() * em1 / ep1;
}

std::shared_ptr<const RadialGrid> RadialGrid::build(double r_max, int n, const DRSpaceParams& p, int panel_points) {
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw DomainError("radial grid needs a finite r_max > 0");
    if (n < 16) throw DomainError("radial grid needs at least 16 nodes");
    panel_points = std::min(panel_points, n);
    if (panel_points < 1 || n % panel_points != 0) {
        throw DomainError("radial grid size must be a multiple of the panel size");
    }
    std::shared_ptr<RadialGrid> g(new RadialGrid(p));
    const auto rule = detail::gauss_legendre(panel_points);
    const int panels = n / panel_points;
    const double width = r_max / panels;
    g->r_.reserve(n);
    g->w_.reserve(n);
    g->dens_.reserve(n);
    for (int k = 0; k < panels; ++k) {
        const double a = k * width;
        for (int i = 0; i < panel_points; ++i) {
            const double r = a + 0.5 * width * (rule.x[i] + 1.0);
            g->r_.push_back(r);
            g->w_.push_back(0.5 * width * rule.w[i]);
            g->dens_.push_back(volume_density(r, p));
        }
    }
    g->r_max_ = r_max;
    return g;
}

std::shared_ptr<const RadialGrid> RadialGrid::from_samples(std::vector<double> r, const DRSpaceParams& p) {
    if (r.size() < 2) throw DomainError("tabulated grid needs at least two radii");
    if (!(r.front() >= 0.0)) throw DomainError("tabulated radii must be >= 0");
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (!(r[i] > r[i - 1]) || !std::isfinite(r[i])) throw DomainError("tabulated radii must increase strictly");
    }
    std::shared_ptr<RadialGrid> g(new RadialGrid(p));
    const std::size_t n = r.size();
    g->w_.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double half = 0.5 * (r[i + 1] - r[i]);
        g->w_[i] += half;
        g->w_[i + 1] += half;
    }
    for (double x : r) g->dens_.push_back(volume_density(x, p));
    g->r_max_ = r.back();
    g->r_ = std::move(r);
    return g;
}

std::size_t RadialGrid::last_index_within(double radius) const {
    const auto it = std::upper_bound(r_.begin(), r_.end(), radius);
    if (it == r_.begin()) throw DomainError("radius below the first grid node");
    return static_cast<std::size_t>(it - r_.begin()) - 1;
}

RadialProfile::RadialProfile(GridPtr g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw DomainError("profile needs a grid");
    if (values.size() != grid->size()) throw DomainError("profile size does not match its grid");
}

RadialProfile RadialProfile::zeros(GridPtr g) {
    std::vector<cplx> v(g->size());
    return RadialProfile(std::move(g), std::move(v));
}

double RadialProfile::sup_norm() const {
    double s = 0.0;
    for (const auto& v : values) s = std::max(s, std::abs(v));
    return s;
}

RadialProfile RadialProfile::truncated(double radius) const {
    RadialProfile out = *this;
    const auto r = grid->r();
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (r[i] > radius) out.values[i] = 0.0;
    }
    return out;
}

cplx radial_integral(const RadialProfile& f) {
    const auto w = f.grid->w();
    const auto d = f.grid->dens();
    cplx s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += w[i] * d[i] * f.values[i];
    return s;
}

double ball_volume(double R, const DRSpaceParams& p) {
    if (!(R >= 0.0)) throw DomainError("ball_volume needs R >= 0");
    if (R == 0.0) return 0.0;
    return detail::adaptive_gk([&](double r) { return volume_density(r, p); }, 0.0, R, 1e-13);
}

void write_profile_csv(std::ostream& os, const RadialProfile& f) {
    os << "r,re,im\n" << std::setprecision(17);
    const auto r = f.grid->r();
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        os << r[i] << ',' << f.values[i].real() << ',' << f.values[i].imag() << '\n';
    }
}

}  // namespace drchaos
