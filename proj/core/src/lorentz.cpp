#include "drchaos/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "drchaos/errors.hpp"
#include "drchaos/spherical.hpp"

namespace drchaos {

LorentzIndex LorentzIndex::make(double p, double q) {
    if (std::isnan(p) || std::isnan(q) || p < 1.0 || q < 1.0) throw DomainError("Lorentz exponents must satisfy p, q >= 1");
    if (p == 1.0 && q != 1.0) throw DomainError("L^{1,q} is only supported for q = 1");
    if (p == kInf && q != kInf) throw DomainError("L^{infinity,q} is only supported for q = infinity");
    return LorentzIndex(p, q);
}

double LorentzIndex::p_prime() const noexcept {
    if (p_ == 1.0) return kInf;
    if (p_ == kInf) return 1.0;
    return p_ / (p_ - 1.0);
}

double LorentzIndex::gamma_p() const noexcept { return p_ == kInf ? -1.0 : 2.0 / p_ - 1.0; }

double distribution_function(const RadialProfile& f, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("distribution function needs alpha > 0");
    const auto w = f.grid->w();
    const auto d = f.grid->dens();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(f.values[i]) > alpha) s += w[i] * d[i];
    }
    return s;
}

double lorentz_norm(const RadialProfile& f, const LorentzIndex& idx) {
    const double p = idx.p();
    const double q = idx.q();
    const auto w = f.grid->w();
    const auto d = f.grid->dens();
    const std::size_t n = f.size();
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(f.values[i]);
    if (p == kInf) return *std::max_element(a.begin(), a.end());

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a[x] > a[y]; });

    // d_f is constant (= M_k, the mass of the k largest values) on [a_{k+1}, a_k).
    double M = 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = order[k];
        M += w[i] * d[i];
        const double ak = a[i];
        const double next = k + 1 < n ? a[order[k + 1]] : 0.0;
        if (ak <= 0.0) break;
        if (q == kInf) {
            if (next < ak) acc = std::max(acc, ak * std::pow(M, 1.0 / p));
        } else {
            acc += std::pow(M, q / p) * (std::pow(ak, q) - std::pow(next, q));
        }
    }
    return q == kInf ? acc : std::pow(acc, 1.0 / q);
}

double lp_norm(const RadialProfile& f, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm needs p >= 1");
    if (p == kInf) return f.sup_norm();
    const auto w = f.grid->w();
    const auto d = f.grid->dens();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * d[i] * std::pow(std::abs(f.values[i]), p);
    return std::pow(s, 1.0 / p);
}

std::string to_string(Membership m) {
    switch (m) {
        case Membership::finite: return "finite";
        case Membership::divergent: return "divergent";
        case Membership::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

MembershipResult classify_growth(std::span<const double> radii, std::span<const double> norms) {
    if (radii.size() != norms.size() || radii.size() < 2) throw DomainError("growth fit needs >= 2 matching samples");
    MembershipResult out;
    out.radii.assign(radii.begin(), radii.end());
    out.norms.assign(norms.begin(), norms.end());
    for (double v : norms) {
        if (!std::isfinite(v)) {
            out.verdict = Membership::divergent;
            out.growth_exponent = kInf;
            return out;
        }
        if (!(v > 0.0)) return out;  // zero profile: nothing to fit
    }
    const double n = static_cast<double>(radii.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double x = std::log(radii[i]);
        const double y = std::log(norms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.growth_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (out.growth_exponent > 0.05) out.verdict = Membership::divergent;
    else if (out.growth_exponent < 0.005) out.verdict = Membership::finite;
    else out.verdict = Membership::inconclusive;
    return out;
}

std::vector<double> default_membership_radii() { return {15.0, 18.0, 21.0, 24.0, 27.0, 30.0}; }

MembershipResult membership_diagnostic(const RadialProfile& f, const LorentzIndex& idx,
                                       std::span<const double> radii) {
    std::vector<double> norms;
    norms.reserve(radii.size());
    for (double R : radii) {
        if (R > f.grid->r_max() * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "truncation radius " << R << " exceeds the grid radius " << f.grid->r_max();
            throw DomainError(os.str());
        }
        norms.push_back(lorentz_norm(f.truncated(R), idx));
    }
    return classify_growth(radii, norms);
}

MembershipResult membership_diagnostic(cplx lambda, const LorentzIndex& idx, const GridPtr& grid,
                                       std::span<const double> radii) {
    return membership_diagnostic(phi_via_ode(lambda, grid), idx, radii);
}

}  // namespace drchaos
