#include "drchaos/spectrum.hpp"

#include <cmath>
#include <sstream>

#include "drchaos/errors.hpp"

namespace drchaos {

std::string to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: return "unknown";
    }
    return "unknown";
}

SpectralConstants spectral_constants(double p, double rho) {
    if (std::isnan(p) || p < 1.0) throw DomainError("spectral constants need p >= 1");
    if (!(rho > 0.0)) throw DomainError("spectral constants need rho > 0");
    if (p == kInf) return {-1.0, 0.0, 0.0};
    const double gamma = 2.0 / p - 1.0;
    // 4 rho^2 / (p p') written without p' so that p = 1 gives exactly 0.
    const double c_p = 4.0 * rho * rho * (p - 1.0) / (p * p);
    const double b = std::abs(gamma) * rho;
    const double vertex = rho * rho - b * b;
    if (std::abs(vertex - c_p) > 1e-12 * std::max(1.0, rho * rho)) {
        std::ostringstream os;
        os << "vertex " << vertex << " and c_p " << c_p << " disagree";
        throw ContractError(os.str());
    }
    return {gamma, c_p, vertex};
}

ParabolicRegion ParabolicRegion::make(double p, double rho) {
    const auto sc = spectral_constants(p, rho);
    return ParabolicRegion(p, rho, std::abs(sc.gamma_p) * rho);
}

bool ParabolicRegion::contains(std::complex<double> z, bool interior_only) const {
    const double xi = z.real();
    const double eta = z.imag();
    if (b_ == 0.0) {
        // A ray has no interior in the plane.
        if (interior_only) return false;
        return eta == 0.0 && xi >= rho_ * rho_;
    }
    const double bound = rho_ * rho_ - b_ * b_ + eta * eta / (4.0 * b_ * b_);
    return interior_only ? xi > bound : xi >= bound;
}

bool ParabolicRegion::strip_contains(std::complex<double> lambda, bool interior_only) const {
    const double im = std::abs(lambda.imag());
    return interior_only ? im < b_ : im <= b_;
}

OmegaGamma omega_and_gamma(std::complex<double> z, double p, double c, double rho) {
    const auto region = ParabolicRegion::make(p, rho);
    OmegaGamma out;
    out.in_omega = z.imag() > 0.0 && region.contains(z + c, true);
    out.gamma = std::sqrt(z - rho * rho + c);
    out.r_of_z = 2.0 * rho / (out.gamma.imag() + rho);
    out.gamma_in_strip_interior = region.strip_contains(out.gamma, true);
    out.roundtrip_error = std::abs(laplace_eigenvalue(out.gamma, rho) - c - z);
    return out;
}

bool ChaosVerdict::coherent() const {
    if (chaotic != Tri::yes) return true;
    return hypercyclic == Tri::yes && periodic_points == Tri::yes && subspace_chaotic == Tri::yes;
}

namespace {

Tri yes_if(bool b) { return b ? Tri::yes : Tri::no; }

constexpr const char* kChaosLarge =
    "2<p<inf, q<inf: chaotic iff c > c_p (eigenfunctions for z in (P_p interior - c) give dense "
    "B_0, B_inf and periodic points; for c <= c_p the spectrum meets iR in at most one point)";
constexpr const char* kWeakNotHyper =
    "2<p<=inf, q=inf: T_t is not strongly continuous on L^{p,inf}, so it is neither hypercyclic nor chaotic";
constexpr const char* kWeakSubspace =
    "2<p<=inf, q=inf: subspace-chaotic iff c > c_p (chaotic on the closed subspace L^p, or C_0 for p=inf)";
constexpr const char* kWeakPeriodic =
    "2<p<=inf, q=inf: periodic points exist iff c >= c_p (phi_{i gamma_p rho} is a fixed point at c = c_p); "
    "for c < c_p, Herz bound on the predual gives ||T_t|| <= e^{(c-c_p)t} < 1";
constexpr const char* kLargePeriodicBelow =
    "2<p<inf, q<inf, c < c_p: ||T_t|| <= e^{(c-c_p)t} < 1 by the Herz criterion, so no periodic points";
constexpr const char* kL2Spectrum =
    "p=2: the L^{2,q} spectrum of Delta - c is empty or real, so T_t is neither chaotic nor subspace-chaotic";
constexpr const char* kL2NotHyper =
    "p=2, c <= rho^2: ||T_t^* phi|| <= e^{(c-rho^2)t}||phi|| on the dual, so T_t is not hypercyclic";
constexpr const char* kL21 =
    "p=2, q=1: point spectrum of the dual L^{2,inf} is nonempty (phi_lambda, lambda real nonzero), so not "
    "hypercyclic; L^{2,1} lies in L^2, which has no periodic points";
constexpr const char* kL2Periodic = "p=2, q<=2: L^{2,q} lies in L^2, where (e^{-t(lambda^2+rho^2-c)}-1) f^ = 0 forces f = 0";
constexpr const char* kL2WeakPeriodic =
    "p=2, q=inf, c > rho^2: phi_lambda with lambda^2 + rho^2 = c is a fixed point in L^{2,inf}";
constexpr const char* kSmallP =
    "1<=p<2: the point spectrum of the dual is nonempty (phi_lambda for lambda in the strip S_p interior), so "
    "not hypercyclic nor subspace-chaotic; the Fourier transform argument rules out periodic points";
constexpr const char* kOpen = "open: not settled by the available results";

}  // namespace

ChaosVerdict classify_dynamics(const LorentzIndex& idx, double c, double rho) {
    if (!std::isfinite(c)) throw DomainError("c must be finite");
    const double p = idx.p();
    const double q = idx.q();
    const auto sc = spectral_constants(p, rho);
    const double cp = sc.c_p;
    ChaosVerdict v;
    auto set = [&](Tri h, Tri ch, Tri sub, Tri per, std::string ch_h, std::string ch_c, std::string ch_s,
                   std::string ch_p) {
        v.hypercyclic = h;
        v.chaotic = ch;
        v.subspace_chaotic = sub;
        v.periodic_points = per;
        v.citations = {std::move(ch_h), std::move(ch_c), std::move(ch_s), std::move(ch_p)};
    };

    if (p > 2.0 && q == kInf) {
        const Tri per = yes_if(c >= cp);
        set(Tri::no, Tri::no, yes_if(c > cp), per, kWeakNotHyper, kWeakNotHyper, kWeakSubspace, kWeakPeriodic);
    } else if (p > 2.0) {
        const Tri all = yes_if(c > cp);
        Tri per = c > cp ? Tri::yes : (c < cp ? Tri::no : Tri::unknown);
        set(all, all, all, per, kChaosLarge, kChaosLarge, kChaosLarge,
            c > cp ? kChaosLarge : (c < cp ? kLargePeriodicBelow : kOpen));
        if (per == Tri::unknown) v.notes.push_back("periodic points in L^{p,q}, 2<p<inf, q<inf, at c = c_p are open");
    } else if (p == 2.0 && q == 1.0) {
        set(Tri::no, Tri::no, Tri::no, Tri::no, kL21, kL2Spectrum, kL2Spectrum, kL2Periodic);
    } else if (p == 2.0) {
        const double r2 = rho * rho;
        const Tri hyper = c <= r2 ? Tri::no : Tri::unknown;
        Tri per;
        std::string per_cite;
        if (q <= 2.0) {
            per = Tri::no;
            per_cite = kL2Periodic;
        } else if (q == kInf) {
            per = c > r2 ? Tri::yes : Tri::unknown;
            per_cite = c > r2 ? kL2WeakPeriodic : kOpen;
        } else {
            per = Tri::unknown;
            per_cite = kOpen;
        }
        set(hyper, Tri::no, Tri::no, per, hyper == Tri::no ? kL2NotHyper : kOpen, kL2Spectrum, kL2Spectrum, per_cite);
        if (hyper == Tri::unknown) v.notes.push_back("hypercyclicity on L^{2,q} for c > rho^2 is open");
        if (per == Tri::unknown) v.notes.push_back("periodic points on L^{2,q} in this cell are open");
    } else {
        set(Tri::no, Tri::no, Tri::no, Tri::no, kSmallP, kSmallP, kSmallP, kSmallP);
    }
    if (!v.coherent()) throw ContractError("classifier produced an incoherent verdict");
    return v;
}

ChaosVerdict classify_dynamics(double p, double q, double c, double rho) {
    return classify_dynamics(LorentzIndex::make(p, q), c, rho);
}

PointSpectrumEntry spherical_membership_rule(double p, double q, double rho) {
    const auto idx = LorentzIndex::make(p, q);
    (void)idx;
    if (p == kInf) return {StripRule::closed_strip, rho, "phi_lambda is bounded iff lambda lies in the closed strip S_1"};
    if (p > 2.0) {
        const double w = std::abs(2.0 / p - 1.0) * rho;
        if (q == kInf) {
            return {StripRule::closed_strip, w, "phi_lambda in L^{p,inf}, p>2, iff lambda lies in the closed strip S_{p'}"};
        }
        return {StripRule::open_strip, w, "phi_lambda in L^{p,q}, p>2, q<inf, iff lambda lies in the open strip S_{p'}"};
    }
    if (p == 2.0) {
        if (q == kInf) return {StripRule::nonzero_real, 0.0, "for real lambda, phi_lambda in L^{2,inf} iff lambda != 0"};
        return {StripRule::empty, 0.0, "phi_lambda is never in L^{2,q} for q < inf"};
    }
    return {StripRule::empty, 0.0, "for p < 2 the L^{p,q} point spectrum is empty"};
}

Tri spherical_membership(std::complex<double> lambda, double p, double q, double rho) {
    const auto rule = spherical_membership_rule(p, q, rho);
    const double eps = 1e-12 * std::max(1.0, rule.strip_half_width);
    const double im = std::abs(lambda.imag());
    switch (rule.rule) {
        case StripRule::closed_strip: return yes_if(im <= rule.strip_half_width + eps);
        case StripRule::open_strip: return yes_if(im < rule.strip_half_width - eps);
        case StripRule::nonzero_real: return yes_if(im <= eps && std::abs(lambda.real()) > eps);
        case StripRule::empty: return Tri::no;
    }
    return Tri::unknown;
}

}  // namespace drchaos
