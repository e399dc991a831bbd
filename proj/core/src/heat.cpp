#include "drchaos/heat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfit.hpp"
#include "drchaos/errors.hpp"
#include "drchaos/lorentz.hpp"
#include "drchaos/parallel.hpp"
#include "drchaos/spectrum.hpp"
#include "quadrature.hpp"

namespace drchaos {

namespace {

// Synthesized values below this fraction of the absolute spectral sum are rounding noise.
constexpr double kResolvedFraction = 1e-12;

void require_same_grid(const GridPtr& a, const GridPtr& b) {
    if (a == b) return;
    if (!a || !b || a->size() != b->size() || a->r_max() != b->r_max() || !(a->params() == b->params())) {
        throw DomainError("profile lives on a different grid than the pipeline");
    }
}

}  // namespace

std::shared_ptr<const SpectralBasis> SpectralBasis::build(GridPtr grid, const SpectralBasisOptions& opt) {
    if (!grid) throw DomainError("spectral basis needs a grid");
    if (!(opt.lambda_max > 0.0) || !(opt.panel_width > 0.0) || opt.panel_points < 1) {
        throw DomainError("spectral basis needs lambda_max, panel_width and panel_points > 0");
    }
    std::shared_ptr<SpectralBasis> b(new SpectralBasis(grid));
    const int panels = static_cast<int>(std::ceil(opt.lambda_max / opt.panel_width - 1e-9));
    const double width = opt.lambda_max / panels;
    const auto rule = detail::gauss_legendre(opt.panel_points);
    for (int k = 0; k < panels; ++k) {
        for (int i = 0; i < opt.panel_points; ++i) {
            b->lambdas_.push_back(k * width + 0.5 * width * (rule.x[i] + 1.0));
            b->qw_.push_back(0.5 * width * rule.w[i]);
        }
    }
    b->lambda_max_ = opt.lambda_max;
    b->max_gap_ = b->lambdas_.front();
    for (std::size_t i = 1; i < b->lambdas_.size(); ++i) {
        b->max_gap_ = std::max(b->max_gap_, b->lambdas_[i] - b->lambdas_[i - 1]);
    }

    // One ODE solve per node serves both the grid samples and the c-function window.
    const auto r = grid->r();
    std::vector<double> win(opt.cfit.samples);
    for (int i = 0; i < opt.cfit.samples; ++i) {
        win[i] = opt.cfit.window_lo + (opt.cfit.window_hi - opt.cfit.window_lo) * i / (opt.cfit.samples - 1);
    }
    std::vector<double> pts(r.begin(), r.end());
    pts.insert(pts.end(), win.begin(), win.end());
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto c) { return pts[a] < pts[c]; });
    std::vector<double> sorted(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = pts[order[i]];

    const std::size_t n_r = grid->size();
    const std::size_t n_l = b->lambdas_.size();
    b->phi_.assign(n_l * n_r, 0.0);
    b->plancherel_.assign(n_l, 0.0);
    b->fit_res_.assign(n_l, 0.0);
    const DRSpaceParams P = grid->params();
    parallel_for(n_l, [&](std::size_t k) {
        const double lambda = b->lambdas_[k];
        const auto sol = solve_radial(lambda, P, sorted, opt.ode);
        std::vector<cplx> phi_win(win.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            const std::size_t src = order[i];
            if (src < n_r) b->phi_[k * n_r + src] = sol.u[i].real();
            else phi_win[src - n_r] = sol.u[i];
        }
        const auto fit = detail::fit_window(lambda, P.rho(), win, phi_win, opt.cfit.correction_orders);
        b->plancherel_[k] = 1.0 / std::norm(fit.c_plus);
        b->fit_res_[k] = fit.residual;
    });
    return b;
}

std::vector<cplx> SpectralBasis::forward(const RadialProfile& f) const {
    require_same_grid(f.grid, grid_);
    const std::size_t n_r = grid_->size();
    std::vector<cplx> weighted(n_r);
    const auto w = grid_->w();
    const auto d = grid_->dens();
    for (std::size_t j = 0; j < n_r; ++j) weighted[j] = w[j] * d[j] * f.values[j];
    std::vector<cplx> out(size());
    for (std::size_t k = 0; k < size(); ++k) {
        const auto row = phi_row(k);
        cplx s = 0.0;
        for (std::size_t j = 0; j < n_r; ++j) s += row[j] * weighted[j];
        out[k] = s;
    }
    return out;
}

RadialProfile SpectralBasis::synthesize(std::span<const cplx> transform, double C) const {
    if (transform.size() != size()) throw DomainError("transform size does not match the spectral basis");
    const std::size_t n_r = grid_->size();
    std::vector<cplx> out(n_r);
    for (std::size_t k = 0; k < size(); ++k) {
        const cplx coef = 2.0 * C * qw_[k] * plancherel_[k] * transform[k];
        if (coef == 0.0) continue;
        const auto row = phi_row(k);
        for (std::size_t j = 0; j < n_r; ++j) out[j] += coef * row[j];
    }
    return RadialProfile(grid_, std::move(out));
}

std::vector<double> SpectralBasis::synthesis_scale(std::span<const cplx> transform, double C) const {
    if (transform.size() != size()) throw DomainError("transform size does not match the spectral basis");
    const std::size_t n_r = grid_->size();
    std::vector<double> out(n_r);
    for (std::size_t k = 0; k < size(); ++k) {
        const double coef = std::abs(2.0 * C * qw_[k] * plancherel_[k] * transform[k]);
        const auto row = phi_row(k);
        for (std::size_t j = 0; j < n_r; ++j) out[j] += coef * std::abs(row[j]);
    }
    return out;
}

SpectralTable SpectralBasis::table(std::span<const cplx> transform) const {
    if (transform.size() != size()) throw DomainError("transform size does not match the spectral basis");
    SpectralTable t;
    t.lambdas = lambdas_;
    t.weights.resize(size());
    for (std::size_t k = 0; k < size(); ++k) t.weights[k] = qw_[k] * plancherel_[k];
    t.values.assign(transform.begin(), transform.end());
    return t;
}

SpectralTable spherical_transform_forward(const RadialProfile& f, std::span<const double> lambdas) {
    const auto& g = *f.grid;
    const auto r = g.r();
    const auto w = g.w();
    const auto d = g.dens();
    SpectralTable out;
    out.lambdas.assign(lambdas.begin(), lambdas.end());
    out.weights.assign(lambdas.size(), 0.0);
    out.values.resize(lambdas.size());
    const double tail_start = 0.9 * g.r_max();
    std::vector<std::string> errors(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t k) {
        const auto phi = solve_radial(lambdas[k], g.params(), r).u;
        cplx total = 0.0, tail = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            const cplx term = w[j] * d[j] * f.values[j] * phi[j];
            total += term;
            if (r[j] > tail_start) tail += term;
        }
        out.values[k] = total;
        if (std::abs(tail) > 1e-8 * std::max(std::abs(total), 1e-300)) {
            std::ostringstream os;
            os << "spherical transform does not converge on the grid at lambda = " << lambdas[k]
               << " (tail " << std::abs(tail) << " vs total " << std::abs(total) << ")";
            errors[k] = os.str();
        }
    });
    for (const auto& e : errors) {
        if (!e.empty()) throw ContractError(e);
    }
    return out;
}

namespace {

std::vector<cplx> heat_transform(double t, const SpectralBasis& basis) {
    const double rho = basis.params().rho();
    std::vector<cplx> F(basis.size());
    const auto ls = basis.lambdas();
    for (std::size_t k = 0; k < F.size(); ++k) F[k] = std::exp(-t * (ls[k] * ls[k] + rho * rho));
    return F;
}

}  // namespace

RadialProfile heat_profile_raw(double t, const SpectralBasis& basis, double C) {
    if (!(t > 0.0)) throw DomainError("heat kernel needs t > 0");
    return basis.synthesize(heat_transform(t, basis), C);
}

HeatProfile heat_profile(double t, const SpectralBasis& basis, double C) {
    if (!(t > 0.0)) throw DomainError("heat kernel needs t > 0");
    const double L = basis.lambda_max();
    if (!(std::exp(-t * L * L) < 1e-12)) {
        std::ostringstream os;
        os << "t = " << t << " is too small for lambda_max = " << L << " (spectral truncation above 1e-12)";
        throw DomainError(os.str());
    }
    const auto F = heat_transform(t, basis);
    HeatProfile out;
    out.t = t;
    out.lambda_cutoff = L;
    out.profile = basis.synthesize(F, C);
    const auto scale = basis.synthesis_scale(F, C);
    auto& v = out.profile.values;
    const auto r = basis.grid()->r();
    for (const auto& x : v) out.max_imag = std::max(out.max_imag, std::abs(x.imag()));

    std::size_t last = 0;
    while (last + 1 < v.size() && std::abs(v[last + 1].real()) >= kResolvedFraction * scale[last + 1]) ++last;
    out.resolved_radius = r[last];
    if (last + 1 < v.size()) {
        // log|h| + rho r + r^2/4t ~ a + kappa log r, fitted on the resolved stretch before R.
        const double R = r[last];
        const double rho = basis.params().rho();
        auto g = [&](std::size_t j) { return std::log(std::abs(v[j].real())) + rho * r[j] + r[j] * r[j] / (4.0 * t); };
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t j = 0; j <= last; ++j) {
            if (r[j] < R - 3.0 || r[j] > R - 0.5) continue;
            const double x = std::log(r[j]);
            sx += x;
            sy += g(j);
            sxx += x * x;
            sxy += x * g(j);
            ++n;
        }
        const double kappa = n >= 3 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
        out.tail_power = kappa;
        const double gR = g(last);
        const double sign = v[last].real() < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = last + 1; j < v.size(); ++j) {
            v[j] = sign * std::exp(gR + kappa * std::log(r[j] / R) - rho * r[j] - r[j] * r[j] / (4.0 * t));
        }
    }
    return out;
}

InversionCalibration calibrate_inversion_constant(const SpectralBasis& basis) {
    auto unit_mass = [&](double t) { return radial_integral(heat_profile(t, basis, 1.0).profile).real(); };
    InversionCalibration cal;
    cal.C = 1.0 / unit_mass(1.0);
    cal.mass_half = cal.C * unit_mass(0.5);
    cal.mass_two = cal.C * unit_mass(2.0);
    cal.spread = std::max(std::abs(cal.mass_half - 1.0), std::abs(cal.mass_two - 1.0));
    if (!(cal.spread <= 1e-2)) {
        std::ostringstream os;
        os << "inversion constant is not consistent across t: masses " << cal.mass_half << " (t = 0.5), "
           << cal.mass_two << " (t = 2)";
        throw ContractError(os.str());
    }
    return cal;
}

Pipeline build_pipeline(const DRSpaceParams& p, const PipelineOptions& opt) {
    auto grid = RadialGrid::build(opt.r_max, opt.n, p);
    auto basis = SpectralBasis::build(grid, opt.basis);
    auto cal = calibrate_inversion_constant(*basis);
    return {p, std::move(grid), std::move(basis), cal};
}

RadialProfile apply_heat_semigroup(const RadialProfile& f, const SemigroupConfig& cfg, const Pipeline& pl) {
    if (!(cfg.t >= 0.0)) throw DomainError("semigroup time must be >= 0");
    if (!(cfg.params == pl.params)) throw DomainError("semigroup config and pipeline use different spaces");
    require_same_grid(f.grid, pl.grid);
    if (cfg.t == 0.0) return f;
    auto F = pl.basis->forward(f);
    const auto ls = pl.basis->lambdas();
    const double rho = pl.params.rho();
    for (std::size_t k = 0; k < F.size(); ++k) F[k] *= std::exp(-cfg.t * (ls[k] * ls[k] + rho * rho) + cfg.c * cfg.t);
    return pl.basis->synthesize(F, pl.C());
}

HerzReport herz_bound_report(const RadialProfile& f, double p, double q, const SemigroupConfig& cfg,
                             const Pipeline& pl) {
    if (!(p > 1.0 && p < kInf)) throw DomainError("Herz bound needs 1 < p < infinity");
    const auto idx = LorentzIndex::make(p, q);
    const auto sc = spectral_constants(p, pl.params.rho());
    HerzReport rep;
    const auto Tf = apply_heat_semigroup(f, cfg, pl);
    rep.ratio = lorentz_norm(Tf, idx) / lorentz_norm(f, idx);
    rep.bound = std::exp((cfg.c - sc.c_p) * cfg.t);
    const auto h = heat_profile(cfg.t, *pl.basis, pl.C());
    const auto phi = phi_via_ode(cplx(0.0, sc.gamma_p * pl.params.rho()), pl.grid);
    cplx s = 0.0;
    const auto w = pl.grid->w();
    const auto d = pl.grid->dens();
    for (std::size_t j = 0; j < phi.size(); ++j) s += w[j] * d[j] * phi.values[j] * h.profile.values[j];
    rep.hhat_boundary = s.real();
    rep.hhat_expected = std::exp(-cfg.t * sc.c_p);
    rep.within_bound = rep.ratio <= 1.05 * rep.bound;
    return rep;
}

}  // namespace drchaos
