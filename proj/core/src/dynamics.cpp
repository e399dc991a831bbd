#include "drchaos/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "drchaos/errors.hpp"

namespace drchaos {

namespace {

// Radii at which eigenfunctions are certified against the radial equation.
std::vector<double> certification_radii(const RadialGrid& g) {
    std::vector<double> out;
    for (double r : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        if (r + 0.05 < g.r_max()) out.push_back(r);
    }
    return out;
}

}  // namespace

double eigen_pairing_check(cplx lambda, double t, const Pipeline& pl) {
    const double rho = pl.params.rho();
    if (std::abs(lambda.imag()) > rho * (1.0 + 1e-12)) {
        throw DomainError("pairing needs |Im lambda| <= rho");
    }
    const auto phi = phi_via_ode(lambda, pl.grid);
    const auto h = heat_profile(t, *pl.basis, pl.C());
    cplx s = 0.0;
    const auto w = pl.grid->w();
    const auto d = pl.grid->dens();
    for (std::size_t j = 0; j < phi.size(); ++j) s += w[j] * d[j] * phi.values[j] * h.profile.values[j];
    const cplx expected = std::exp(-t * (lambda * lambda + rho * rho));
    return std::abs(s - expected) / std::abs(expected);
}

EigenCombination& EigenCombination::add(cplx a, cplx lambda) {
    const double rho = cfg_.params.rho();
    terms_.push_back({a, lambda, lambda * lambda + rho * rho - cfg_.c});
    return *this;
}

EigenCombination& EigenCombination::add_with_exponent(cplx a, cplx z) {
    const double rho = cfg_.params.rho();
    const cplx lambda = std::sqrt(z - rho * rho + cfg_.c);
    terms_.push_back({a, lambda, z});
    return *this;
}

namespace {

struct CertifiedTerms {
    std::vector<RadialProfile> phi;
    double max_residual = 0.0;
};

CertifiedTerms certify(const EigenCombination& combo, const GridPtr& grid) {
    if (!(combo.config().params == grid->params())) throw DomainError("combination and grid use different spaces");
    CertifiedTerms out;
    const auto radii = certification_radii(*grid);
    for (const auto& term : combo.terms()) {
        const double res = eigen_residual(term.lambda, grid->params(), radii);
        out.max_residual = std::max(out.max_residual, res);
        if (!(res <= 1e-6)) {
            std::ostringstream os;
            os << "eigenfunction for lambda = " << term.lambda << " fails certification (residual " << res << ")";
            throw ContractError(os.str());
        }
        out.phi.push_back(phi_via_ode(term.lambda, grid));
    }
    return out;
}

RadialProfile combine(const EigenCombination& combo, const CertifiedTerms& ct, double t, const GridPtr& grid) {
    auto out = RadialProfile::zeros(grid);
    const auto& terms = combo.terms();
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const cplx coef = terms[k].a * std::exp(-t * terms[k].z);
        for (std::size_t j = 0; j < out.size(); ++j) out.values[j] += coef * ct.phi[k].values[j];
    }
    return out;
}

}  // namespace

OrbitResult orbit_series(const EigenCombination& combo, std::span<const double> times,
                         std::span<const LorentzIndex> norms, const GridPtr& grid, bool keep_snapshots) {
    const auto ct = certify(combo, grid);
    OrbitResult out;
    out.max_eigen_residual = ct.max_residual;
    for (double t : times) {
        auto g = combine(combo, ct, t, grid);
        OrbitSample s{t, g.sup_norm(), {}};
        for (const auto& idx : norms) s.lorentz.push_back(lorentz_norm(g, idx));
        out.samples.push_back(std::move(s));
        if (keep_snapshots) out.snapshots.push_back(std::move(g));
    }
    return out;
}

RadialProfile orbit_profile(const EigenCombination& combo, double t, const GridPtr& grid) {
    return combine(combo, certify(combo, grid), t, grid);
}

PeriodicReport periodic_point_check(double p, double q, double c, const DRSpaceParams& P, const GridPtr& grid) {
    const double rho = P.rho();
    const auto idx = LorentzIndex::make(p, q);
    const auto verdict = classify_dynamics(idx, c, rho);
    PeriodicReport rep;
    rep.exists = verdict.periodic_points;
    rep.citation = verdict.citations.at(3);
    if (rep.exists != Tri::yes) return rep;

    const auto sc = spectral_constants(p, rho);
    const auto radii = default_membership_radii();
    SemigroupConfig cfg{c, 0.0, P};

    auto certify_witness = [&](cplx lambda, std::optional<double> period) {
        PeriodicWitness w;
        w.lambda = lambda;
        w.z = lambda * lambda + rho * rho - c;
        w.period = period;
        const auto cert_radii = certification_radii(*grid);
        w.eigen_residual = eigen_residual(lambda, P, cert_radii);
        w.membership = membership_diagnostic(lambda, idx, grid, radii).verdict;
        EigenCombination combo(cfg);
        combo.add(1.0, lambda);
        const double T = period.value_or(1.0);
        const std::vector<double> times{0.0, T};
        const auto orbit = orbit_series(combo, times, {}, grid, true);
        double diff = 0.0;
        for (std::size_t j = 0; j < orbit.snapshots[0].size(); ++j) {
            diff = std::max(diff, std::abs(orbit.snapshots[1].values[j] - orbit.snapshots[0].values[j]));
        }
        w.orbit_return_error = diff / orbit.snapshots[0].sup_norm();
        return w;
    };

    if (p > 2.0 && c == sc.c_p) {
        // Fixed point: lambda^2 + rho^2 = c_p.
        rep.witness = certify_witness(cplx(0.0, std::abs(sc.gamma_p) * rho), std::nullopt);
        return rep;
    }
    if (p == 2.0) {
        rep.witness = certify_witness(cplx(std::sqrt(c - rho * rho), 0.0), std::nullopt);
        return rep;
    }
    // c > c_p: z = i theta on the imaginary axis inside (P_p interior - c), period 2 pi / theta.
    for (double theta : {1.0, 0.5, 0.25, 0.125, 0.0625}) {
        const auto og = omega_and_gamma(cplx(0.0, theta), p, c, rho);
        if (!og.in_omega) continue;
        auto w = certify_witness(og.gamma, 2.0 * std::numbers::pi / theta);
        if (w.membership == Membership::finite) {
            rep.witness = w;
            return rep;
        }
    }
    return rep;
}

namespace {

// e^w - 1 without cancellation for small |w|.
cplx expm1c(cplx w) {
    if (std::abs(w) < 1e-4) return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)));
    return std::exp(w) - 1.0;
}

cplx wtt_factor(cplx lambda, double c, double t, double rho) {
    return expm1c(-t * (lambda * lambda + (rho * rho - c)));
}

// Newton on u = g / g' for g(lambda) = e^{-t(lambda^2 + rho^2 - c)} - 1; converges
// quadratically at multiple roots as well.
cplx polish_zero(cplx lambda, double c, double t, double rho) {
    for (int it = 0; it < 100; ++it) {
        const cplx g = wtt_factor(lambda, c, t, rho);
        const cplx E = g + 1.0;
        if (std::abs(g) == 0.0) break;
        const cplx g1 = -2.0 * t * lambda * E;
        const cplx g2 = (-2.0 * t + 4.0 * t * t * lambda * lambda) * E;
        if (std::abs(g1) == 0.0) break;
        const cplx u = g / g1;
        const cplx du = 1.0 - g * g2 / (g1 * g1);
        const cplx step = u / du;
        lambda -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(lambda))) break;
    }
    return lambda;
}

}  // namespace

cplx wtt_hhat(cplx lambda, double c, double t, double t_prime, double rho) {
    const cplx E = lambda * lambda + rho * rho;
    return std::exp(-t_prime * E) * expm1c(-t * (lambda * lambda + (rho * rho - c)));
}

WttReport wtt_window_check(double c, double t, double t_prime, double p, const DRSpaceParams& P, double re_max,
                           int n_re, int n_im) {
    if (!(p > 2.0 && p < kInf)) throw DomainError("WTT check needs 2 < p < infinity");
    if (!(t > 0.0 && t_prime > 0.0)) throw DomainError("WTT check needs t, t' > 0");
    if (!std::isfinite(c)) throw DomainError("c must be finite");
    if (n_re < 3 || n_im < 3 || !(re_max > 0.0)) throw DomainError("WTT grid must have at least 3 x 3 points");
    const double rho = P.rho();
    const auto sc = spectral_constants(p, rho);
    WttReport rep;
    rep.c = c;
    rep.t = t;
    rep.t_prime = t_prime;
    rep.p = p;
    rep.rho = rho;
    rep.c_p = sc.c_p;
    rep.c_below_cp = c < sc.c_p;
    const double b = std::abs(sc.gamma_p) * rho;
    rep.eps = rep.c_below_cp ? (sc.c_p - c) / (4.0 * rho * rho) : 0.0;
    rep.strip_half_width = b + rep.eps;

    const double h = rep.strip_half_width;
    auto re_at = [&](int i) { return -re_max + 2.0 * re_max * i / (n_re - 1); };
    auto im_at = [&](int j) { return -h + 2.0 * h * j / (n_im - 1); };

    if (rep.c_below_cp) {
        rep.min_abs_hhat = kInf;
        rep.min_abs_factor = kInf;
        double edge = 0.0, half_edge = 0.0;
        for (int i = 0; i < n_re; ++i) {
            for (int j = 0; j < n_im; ++j) {
                const cplx lam(re_at(i), im_at(j));
                rep.min_abs_factor = std::min(rep.min_abs_factor, std::abs(wtt_factor(lam, c, t, rho)));
                rep.min_abs_hhat = std::min(rep.min_abs_hhat, std::abs(wtt_hhat(lam, c, t, t_prime, rho)));
            }
        }
        for (int j = 0; j < n_im; ++j) {
            for (double sgn : {-1.0, 1.0}) {
                edge = std::max(edge, std::abs(wtt_hhat(cplx(sgn * re_max, im_at(j)), c, t, t_prime, rho)));
                half_edge =
                    std::max(half_edge, std::abs(wtt_hhat(cplx(sgn * 0.5 * re_max, im_at(j)), c, t, t_prime, rho)));
            }
        }
        rep.edge_abs_hhat = edge;
        rep.nonvanishing = rep.min_abs_factor > 0.0 && rep.min_abs_hhat > 0.0;
        rep.decays = edge < 1e-10 && edge < half_edge;
        return rep;
    }

    // c >= c_p: zeros of hat h in the closed strip, seeded by grid minima of the factor.
    std::vector<double> mag(static_cast<std::size_t>(n_re) * n_im);
    auto at = [&](int i, int j) -> double& { return mag[static_cast<std::size_t>(i) * n_im + j]; };
    for (int i = 0; i < n_re; ++i) {
        for (int j = 0; j < n_im; ++j) {
            const cplx lam(re_at(i), im_at(j));
            at(i, j) = std::abs(wtt_factor(lam, c, t, rho));
        }
    }
    const double tol = 1e-9;
    for (int i = 0; i < n_re; ++i) {
        for (int j = 0; j < n_im; ++j) {
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const int a = i + di, bb = j + dj;
                    if ((di || dj) && a >= 0 && a < n_re && bb >= 0 && bb < n_im && at(a, bb) < at(i, j)) {
                        is_min = false;
                        break;
                    }
                }
            }
            // Only minima that already look like zeros; elsewhere Newton wanders.
            if (!is_min || at(i, j) > 0.5) continue;
            const cplx z = polish_zero(cplx(re_at(i), im_at(j)), c, t, rho);
            if (std::abs(z.imag()) > b + tol || std::abs(z.real()) > re_max) continue;
            // Judge convergence on the factor: the Gaussian prefactor alone makes hat h tiny
            // far out on the real axis.
            if (!(std::abs(wtt_factor(z, c, t, rho)) < 1e-12)) continue;
            const double res = std::abs(wtt_hhat(z, c, t, t_prime, rho));
            const bool dup = std::any_of(rep.zeros.begin(), rep.zeros.end(),
                                         [&](const cplx& y) { return std::abs(y - z) < 1e-6; });
            if (dup) continue;
            rep.zeros.push_back(z);
            rep.zero_residuals.push_back(res);
        }
    }
    return rep;
}

}  // namespace drchaos
