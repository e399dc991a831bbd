#include "drchaos/tools/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "drchaos/dynamics.hpp"
#include "drchaos/errors.hpp"
#include "drchaos/heat.hpp"
#include "drchaos/lorentz.hpp"
#include "drchaos/space_config.hpp"
#include "drchaos/spectrum.hpp"
#include "drchaos/spherical.hpp"

namespace drchaos::tools {

namespace {

// Acceptance tolerances. These are the contract; do not relax them to make a run green.
namespace tol {
constexpr double oracle_rel = 1e-6;           // 1: |integral - ode| <= tol (1 + |phi|)
constexpr double oracle_seconds = 120.0;      // 1: runtime
constexpr double normalization = 1e-8;        // 2: phi(e), phi_{-i rho}
constexpr double heat_mass = 1e-2;            // 2: int h_t
constexpr double calibration_spread = 1e-2;   // 2
constexpr double pairing = 1e-2;              // 3
constexpr double decay_rel = 5e-2;            // 4
constexpr double phi0_slope = 1e-2;           // 4: log(phi_0 e^{rho r} / (1 + r)) flat on [10, 30]
constexpr double cfun_window_rel = 1e-3;      // 5
constexpr double cfun_min_order = 1.8;        // 5: fitted decay exponent of the residual, >= 0.9 * 2
constexpr double round_trip = 1e-2;           // 6
constexpr double semigroup_law = 1e-2;        // 6
constexpr double herz_slack = 1.05;           // 7
constexpr double herz_boundary = 1e-3;        // 7
constexpr double vertex = 1e-12;              // 8
constexpr double witness_residual = 1e-6;     // 10
constexpr double witness_return = 1e-8;       // 10
constexpr double wtt_root = 1e-8;             // 11
constexpr double suite_seconds = 900.0;       // 12
}  // namespace tol

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }

std::string pq_label(double p, double q) {
    auto one = [](double x) { return std::isinf(x) ? std::string("inf") : fmt("%g", x); };
    return "(" + one(p) + "," + one(q) + ")";
}

class Context {
public:
    explicit Context(const VerifyOptions& opt) : opt_(opt), chosen_(load_space(opt.space)) {}

    const SpaceConfig& chosen() const { return chosen_; }
    const OdeOptions& ode() const { return opt_.ode; }

    /// heisenberg1, quaternionic and the chosen space, without duplicates.
    std::vector<SpaceConfig> reference_spaces() const {
        std::vector<SpaceConfig> out{load_space("heisenberg1"), load_space("quaternionic")};
        if (std::none_of(out.begin(), out.end(), [&](const SpaceConfig& s) { return s.params() == chosen_.params(); })) {
            out.push_back(chosen_);
        }
        return out;
    }

    const Pipeline& pipeline(const DRSpaceParams& p) {
        const auto key = std::make_pair(p.m(), p.l());
        auto it = pipelines_.find(key);
        if (it == pipelines_.end()) {
            PipelineOptions po;
            po.basis.ode = opt_.ode;
            po.basis.cfit.ode = opt_.ode;
            it = pipelines_.emplace(key, build_pipeline(p, po)).first;
        }
        return it->second;
    }

private:
    VerifyOptions opt_;
    SpaceConfig chosen_;
    std::map<std::pair<int, int>, Pipeline> pipelines_;
};

struct Verdict {
    bool pass;
    std::string detail;
};

// 1 ------------------------------------------------------------------------------------------
Verdict spherical_oracle(Context& ctx) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string where;
    for (const char* name : {"heisenberg1", "quaternionic"}) {
        const auto P = load_space(name).params();
        for (cplx lambda : {cplx(0), cplx(0.5), cplx(1), cplx(2), cplx(1, 0.3)}) {
            for (double t : {0.5, 1.0, 2.0, 5.0}) {
                const double r[] = {t};
                const cplx ode = phi_values(lambda, P, r, ctx.ode()).front();
                const cplx integral = phi_via_integral(lambda, t, P);
                const double err = std::abs(ode - integral) / (1.0 + std::abs(ode));
                if (err > worst) {
                    worst = err;
                    std::ostringstream os;
                    os << name << " lambda=" << lambda << " t=" << t;
                    where = os.str();
                }
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= tol::oracle_rel && secs < tol::oracle_seconds,
            "worst scaled error " + sci(worst) + " at " + where + " (tol " + sci(tol::oracle_rel) + ", limit " +
                fmt("%.0f", tol::oracle_seconds) + " s)"};
}

// 2 ------------------------------------------------------------------------------------------
Verdict normalizations(Context& ctx) {
    bool ok = true;
    double worst_e = 0.0, worst_one = 0.0, worst_mass = 0.0, worst_spread = 0.0;
    for (const auto& space : ctx.reference_spaces()) {
        const auto P = space.params();
        const double zero[] = {0.0};
        for (cplx lambda : {cplx(0), cplx(0.5), cplx(1), cplx(2), cplx(1, 0.3), cplx(3, -0.7)}) {
            worst_e = std::max(worst_e, std::abs(phi_values(lambda, P, zero, ctx.ode()).front() - 1.0));
        }
        const std::vector<double> radii{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
        for (const cplx v : phi_values(cplx(0, -P.rho()), P, radii, ctx.ode())) {
            worst_one = std::max(worst_one, std::abs(v - 1.0));
        }
        const auto& pl = ctx.pipeline(P);
        worst_spread = std::max(worst_spread, pl.calibration.spread);
        for (double t : {0.5, 1.0, 2.0}) {
            const auto h = heat_profile(t, *pl.basis, pl.C());
            worst_mass = std::max(worst_mass, std::abs(radial_integral(h.profile) - 1.0));
        }
    }
    ok = worst_e <= tol::normalization && worst_one <= tol::normalization && worst_mass <= tol::heat_mass &&
         worst_spread <= tol::calibration_spread;
    return {ok, "|phi(e)-1| " + sci(worst_e) + ", |phi_{-i rho}-1| " + sci(worst_one) + ", |int h_t - 1| " +
                    sci(worst_mass) + ", calibration spread " + sci(worst_spread)};
}

// 3 ------------------------------------------------------------------------------------------
Verdict eigen_pairing(Context& ctx) {
    double worst = 0.0;
    std::string where;
    for (const auto& space : ctx.reference_spaces()) {
        const auto& pl = ctx.pipeline(space.params());
        for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
            for (double t : {0.5, 1.0, 2.0, 5.0}) {
                const double err = eigen_pairing_check(lambda, t, pl);
                if (err > worst) {
                    worst = err;
                    where = space.name + " lambda=" + fmt("%g", lambda) + " t=" + fmt("%g", t);
                }
            }
        }
    }
    // Worked value: lambda = 0, t = 1, rho = 1 pairs to e^{-1}.
    const auto& pl1 = ctx.pipeline(load_space("heisenberg1").params());
    const double err01 = eigen_pairing_check(0.0, 1.0, pl1);
    return {worst <= tol::pairing && err01 <= tol::pairing,
            "worst relative error " + sci(worst) + " at " + where + "; rho=1 lambda=0 t=1 error " + sci(err01)};
}

// 4 ------------------------------------------------------------------------------------------
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Verdict asymptotics(Context& ctx) {
    const auto P = ctx.chosen().params();
    double worst = 0.0;
    for (double p : {1.2, 1.5, 1.8}) {
        for (double alpha : {0.0, 0.5, 1.0}) {
            const auto fit = decay_rate(alpha, p, P);
            worst = std::max(worst, std::abs(fit.slope / fit.expected - 1.0));
        }
    }
    // phi_0 e^{rho r} against (1 + r): flat with the factor, visibly sloped without it.
    std::vector<double> r, with, without;
    for (int i = 0; i <= 200; ++i) r.push_back(10.0 + 20.0 * i / 200);
    const auto phi0 = phi_values(0.0, P, r, ctx.ode());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double scaled = std::log(phi0[i].real()) + P.rho() * r[i];
        without.push_back(scaled);
        with.push_back(scaled - std::log1p(r[i]));
    }
    const double s_with = std::abs(ls_slope(r, with));
    const double s_without = std::abs(ls_slope(r, without));
    const bool ok = worst <= tol::decay_rel && s_with <= tol::phi0_slope && s_without > tol::phi0_slope;
    return {ok, "decay-rate relative error " + sci(worst) + " (tol " + sci(tol::decay_rel) +
                    "); phi_0 slope with (1+r) " + sci(s_with) + ", without " + sci(s_without)};
}

// 5 ------------------------------------------------------------------------------------------
Verdict cfunction_stability(Context& ctx) {
    const auto P = ctx.chosen().params();
    double worst_window = 0.0;
    double min_order = 1e300, max_order = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double lambda = 0.5 * k;
        CFitOptions a;
        a.window_lo = 10.0;
        a.window_hi = 17.0;
        a.ode = ctx.ode();
        CFitOptions b = a;
        b.window_lo = 18.0;
        b.window_hi = 25.0;
        const double ca = std::abs(fit_cfunction_at(lambda, P, a).c_plus);
        const double cb = std::abs(fit_cfunction_at(lambda, P, b).c_plus);
        worst_window = std::max(worst_window, std::abs(ca - cb) / ca);

        // Decay exponent of what the leading pair leaves unexplained, window start t0.
        std::vector<double> t0s, logs;
        for (double t0 : {6.0, 8.0, 10.0, 12.0}) {
            CFitOptions o;
            o.window_lo = t0;
            o.window_hi = t0 + 7.0;
            o.ode = ctx.ode();
            t0s.push_back(t0);
            logs.push_back(std::log(fit_cfunction_at(lambda, P, o).leading_defect));
        }
        const double order = -ls_slope(t0s, logs);
        min_order = std::min(min_order, order);
        max_order = std::max(max_order, order);
    }
    const bool ok = worst_window <= tol::cfun_window_rel && min_order >= tol::cfun_min_order;
    return {ok, "window agreement " + sci(worst_window) + " (tol " + sci(tol::cfun_window_rel) +
                    "); residual decays like e^{-k t} with k in [" + fmt("%.2f", min_order) + ", " +
                    fmt("%.2f", max_order) + "], need k >= " + fmt("%.1f", tol::cfun_min_order)};
}

// 6 ------------------------------------------------------------------------------------------
double sup_rel(const RadialProfile& a, const RadialProfile& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a.values[i] - b.values[i]));
        den = std::max(den, std::abs(b.values[i]));
    }
    return num / den;
}

Verdict round_trip(Context& ctx) {
    const auto& pl = ctx.pipeline(ctx.chosen().params());
    const auto f1 = RadialProfile::sample(pl.grid, [](double r) { return cplx(std::exp(-r * r)); });
    const auto f2 = RadialProfile::sample(pl.grid, [](double r) { return cplx((1.0 + r * r) * std::exp(-0.5 * r * r)); });
    double worst_rt = 0.0, worst_law = 0.0;
    for (const auto* f : {&f1, &f2}) {
        const auto back = pl.basis->synthesize(pl.basis->forward(*f), pl.C());
        worst_rt = std::max(worst_rt, sup_rel(back, *f));
        const double c = 0.3;
        const auto once = apply_heat_semigroup(*f, {c, 1.5, pl.params}, pl);
        const auto twice = apply_heat_semigroup(apply_heat_semigroup(*f, {c, 1.0, pl.params}, pl), {c, 0.5, pl.params}, pl);
        worst_law = std::max(worst_law, sup_rel(twice, once));
    }
    return {worst_rt <= tol::round_trip && worst_law <= tol::semigroup_law,
            "round trip " + sci(worst_rt) + ", T_0.5 T_1 vs T_1.5 " + sci(worst_law)};
}

// 7 ------------------------------------------------------------------------------------------
Verdict herz(Context& ctx) {
    const auto& pl = ctx.pipeline(ctx.chosen().params());
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst_ratio = 0.0, worst_boundary = 0.0;
    for (int k = 0; k < 10; ++k) {
        // Two Gaussian bumps of random centre, width and relative sign.
        const double c1 = 3 * U(rng), w1 = 0.3 + 1.2 * U(rng);
        const double c2 = 3 * U(rng), w2 = 0.3 + 1.2 * U(rng), a2 = 2 * U(rng) - 1;
        const auto f = RadialProfile::sample(pl.grid, [&](double r) {
            return cplx(std::exp(-(r - c1) * (r - c1) / w1) + a2 * std::exp(-(r - c2) * (r - c2) / w2));
        });
        for (auto [p, q] : {std::pair{4.0, 1.0}, {3.0, 2.0}, {4.0, kInf}}) {
            for (double t : {0.5, 1.0, 2.0}) {
                const auto rep = herz_bound_report(f, p, q, {0.0, t, pl.params}, pl);
                worst_ratio = std::max(worst_ratio, rep.ratio / rep.bound);
                worst_boundary = std::max(worst_boundary, std::abs(rep.hhat_boundary - rep.hhat_expected));
            }
        }
    }
    return {worst_ratio <= tol::herz_slack && worst_boundary <= tol::herz_boundary,
            "max ratio/bound " + fmt("%.4f", worst_ratio) + " (limit " + fmt("%.2f", tol::herz_slack) +
                "), |hhat_t(i gamma_p rho) - e^{-t c_p}| " + sci(worst_boundary)};
}

// 8 ------------------------------------------------------------------------------------------
// Independent membership test: z is in Lambda(S_p) iff one of its two preimages
// +-sqrt(z - rho^2) lies in the strip. Both preimages share |Im|, so one suffices.
bool preimage_in_strip(cplx z, double rho, double b) {
    return std::abs(std::sqrt(z - rho * rho).imag()) <= b;
}

double closed_form_cp(double p, double rho) {
    if (std::isinf(p) || p == 1.0) return 0.0;
    const double pp = p / (p - 1.0);
    return 4.0 * rho * rho / (p * pp);
}

Verdict region_oracle(Context& ctx) {
    const double rho = ctx.chosen().params().rho();
    std::mt19937_64 rng(8);
    int disagreements = 0;
    double worst_vertex = 0.0;
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, kInf}) {
        const auto region = ParabolicRegion::make(p, rho);
        worst_vertex = std::max(worst_vertex, std::abs(region.vertex() - closed_form_cp(p, rho)));
        worst_vertex = std::max(worst_vertex, std::abs(spectral_constants(p, rho).c_p - closed_form_cp(p, rho)));
        const double b = region.half_width();
        std::uniform_real_distribution<double> X(-2.0 * rho * rho, 4.0 * rho * rho + 4.0);
        std::uniform_real_distribution<double> Y(-4.0 * rho * rho - 2.0, 4.0 * rho * rho + 2.0);
        for (int i = 0; i < 10000; ++i) {
            // Every tenth point is the image of a strip point, so boundary-adjacent z get sampled.
            cplx z;
            if (i % 10 == 0) {
                std::uniform_real_distribution<double> L(-3.0, 3.0);
                std::uniform_real_distribution<double> E(-b, b);
                const cplx lambda(L(rng), E(rng));
                z = lambda * lambda + rho * rho;
            } else {
                z = {X(rng), Y(rng)};
            }
            if (region.contains(z) != preimage_in_strip(z, rho, b)) ++disagreements;
        }
    }
    return {disagreements == 0 && worst_vertex <= tol::vertex,
            std::to_string(disagreements) + " disagreements over 6 x 10^4 points; worst |vertex - c_p| " +
                sci(worst_vertex)};
}

// 9 ------------------------------------------------------------------------------------------
// Decision table at rho = 1: p x q x {c_p - 0.1, c_p, c_p + 0.1}. Flags in the order
// hypercyclic, chaotic, subspace-chaotic, periodic points. "----" marks an excluded index.
struct Cell {
    double p, q;
    const char* flags[3];
};

const Cell kTable[] = {
    {1.0, 1.0, {"NNNN", "NNNN", "NNNN"}},
    {1.0, 2.0, {"----", "----", "----"}},
    {1.0, kInf, {"----", "----", "----"}},
    {1.5, 1.0, {"NNNN", "NNNN", "NNNN"}},
    {1.5, 2.0, {"NNNN", "NNNN", "NNNN"}},
    {1.5, kInf, {"NNNN", "NNNN", "NNNN"}},
    {2.0, 1.0, {"NNNN", "NNNN", "NNNN"}},
    {2.0, 2.0, {"NNNN", "NNNN", "UNNN"}},
    {2.0, kInf, {"NNNU", "NNNU", "UNNY"}},
    {3.0, 1.0, {"NNNN", "NNNU", "YYYY"}},
    {3.0, 2.0, {"NNNN", "NNNU", "YYYY"}},
    {3.0, kInf, {"NNNN", "NNNY", "NNYY"}},
    {4.0, 1.0, {"NNNN", "NNNU", "YYYY"}},
    {4.0, 2.0, {"NNNN", "NNNU", "YYYY"}},
    {4.0, kInf, {"NNNN", "NNNY", "NNYY"}},
    {kInf, 1.0, {"----", "----", "----"}},
    {kInf, 2.0, {"----", "----", "----"}},
    {kInf, kInf, {"NNNN", "NNNY", "NNYY"}},
};

char tri_char(Tri t) { return t == Tri::yes ? 'Y' : t == Tri::no ? 'N' : 'U'; }

Verdict classifier_table(Context&) {
    const double rho = 1.0;
    int cells = 0, mismatches = 0, incoherent = 0, uncited = 0;
    std::string first;
    for (const auto& cell : kTable) {
        const double cp = spectral_constants(cell.p, rho).c_p;
        const double cs[3] = {cp - 0.1, cp, cp + 0.1};
        for (int j = 0; j < 3; ++j) {
            ++cells;
            std::string got;
            try {
                const auto v = classify_dynamics(cell.p, cell.q, cs[j], rho);
                got = {tri_char(v.hypercyclic), tri_char(v.chaotic), tri_char(v.subspace_chaotic),
                       tri_char(v.periodic_points)};
                if (!v.coherent()) ++incoherent;
                if (v.citations.size() != 4 ||
                    std::any_of(v.citations.begin(), v.citations.end(), [](const std::string& s) { return s.empty(); })) {
                    ++uncited;
                }
            } catch (const DomainError&) {
                got = "----";
            }
            if (got != cell.flags[j]) {
                ++mismatches;
                if (first.empty()) {
                    first = " first mismatch " + pq_label(cell.p, cell.q) + " c=" + fmt("%g", cs[j]) + ": got " + got +
                            ", want " + cell.flags[j];
                }
            }
        }
    }
    return {mismatches == 0 && incoherent == 0 && uncited == 0,
            std::to_string(cells) + " cells, " + std::to_string(mismatches) + " mismatches, " +
                std::to_string(incoherent) + " incoherent, " + std::to_string(uncited) + " missing citations" + first};
}

// 10 -----------------------------------------------------------------------------------------
Verdict periodic_witnesses(Context& ctx) {
    const auto P = load_space("heisenberg1").params();  // rho = 1
    const auto& pl = ctx.pipeline(P);
    bool ok = true;
    std::ostringstream os;
    const double c3 = spectral_constants(3.0, P.rho()).c_p;  // 8/9
    for (auto [p, q, c] : {std::tuple{3.0, kInf, c3}, {2.0, kInf, 2.0}}) {
        const auto rep = periodic_point_check(p, q, c, P, pl.grid);
        os << pq_label(p, q) << " c=" << fmt("%.6g", c) << ": exists " << to_string(rep.exists);
        if (rep.exists != Tri::yes || !rep.witness) {
            ok = false;
            os << ", no witness; ";
            continue;
        }
        const auto& w = *rep.witness;
        os << ", lambda " << w.lambda << ", residual " << sci(w.eigen_residual) << ", membership "
           << to_string(w.membership) << ", return " << sci(w.orbit_return_error) << "; ";
        ok = ok && w.eigen_residual <= tol::witness_residual && w.membership == Membership::finite &&
             w.orbit_return_error <= tol::witness_return;
    }
    int refused = 0;
    for (double c : {-1.0, 0.0, 0.5, 5.0}) {
        const auto rep = periodic_point_check(1.5, 1.0, c, P, pl.grid);
        if (rep.exists == Tri::no && !rep.citation.empty() && !rep.witness) ++refused;
    }
    ok = ok && refused == 4;
    os << "(1.5,1): " << refused << "/4 values of c answer no with citation";
    return {ok, os.str()};
}

// 11 -----------------------------------------------------------------------------------------
Verdict wtt_window(Context&) {
    const auto P = load_space("heisenberg1").params();  // rho = 1
    const auto below = wtt_window_check(0.5, 1.0, 1.0, 4.0, P);
    const bool nonvanishing = below.nonvanishing && below.min_abs_hhat > 0.0;

    const double c = 1.0;
    const double expected = std::sqrt(c - spectral_constants(4.0, P.rho()).c_p);  // 0.5
    const auto above = wtt_window_check(c, 1.0, 1.0, 4.0, P);
    bool plus = false, minus = false;
    std::ostringstream zs;
    for (const cplx z : above.zeros) {
        zs << " " << z;
        if (std::abs(z - expected) <= tol::wtt_root) plus = true;
        if (std::abs(z + expected) <= tol::wtt_root) minus = true;
    }
    std::ostringstream os;
    os << "c=0.5: min |hhat| " << sci(below.min_abs_hhat) << " over the strip grid; c=1: zeros in the closed strip {"
       << zs.str() << " }, expected +-" << fmt("%g", expected) << (plus && minus ? " found" : " not found");
    return {nonvanishing && plus && minus, os.str()};
}

using Runner = Verdict (*)(Context&);

struct Criterion {
    int id;
    const char* title;
    Runner run;
};

const Criterion kCriteria[] = {
    {1, "spherical-function oracle agreement", spherical_oracle},
    {2, "normalizations", normalizations},
    {3, "eigen-pairing", eigen_pairing},
    {4, "asymptotics", asymptotics},
    {5, "c-function stability", cfunction_stability},
    {6, "transform round trip", round_trip},
    {7, "Herz bound", herz},
    {8, "region oracle", region_oracle},
    {9, "classifier table", classifier_table},
    {10, "periodic witnesses", periodic_witnesses},
    {11, "WTT window", wtt_window},
};

CriterionOutcome run_one(const Criterion& c, Context& ctx) {
    CriterionOutcome out{c.id, c.title, false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto v = c.run(ctx);
        out.pass = v.pass;
        out.detail = v.detail;
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("error: ") + e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace

std::vector<CriterionOutcome> run_acceptance(const VerifyOptions& opt,
                                             const std::function<void(const CriterionOutcome&)>& on_result) {
    for (int id : opt.only) {
        if (id < 1 || id > kCriterionCount) throw DomainError("no acceptance criterion " + std::to_string(id));
    }
    auto wanted = [&](int id) { return opt.only.empty() || std::find(opt.only.begin(), opt.only.end(), id) != opt.only.end(); };
    auto emit = [&](const CriterionOutcome& o) {
        if (on_result) on_result(o);
    };

    std::vector<CriterionOutcome> results;
    Context ctx(opt);
    const auto start = std::chrono::steady_clock::now();
    bool ran_all = true;
    for (const auto& c : kCriteria) {
        if (!wanted(c.id)) {
            ran_all = false;
            continue;
        }
        results.push_back(run_one(c, ctx));
        emit(results.back());
    }
    if (wanted(12)) {
        CriterionOutcome timing{12, "full suite runtime", false, "", 0.0};
        double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!ran_all) {
            // Time the whole suite from scratch, without reusing cached pipelines.
            Context fresh(opt);
            const auto t0 = std::chrono::steady_clock::now();
            for (const auto& c : kCriteria) run_one(c, fresh);
            total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        timing.seconds = total;
        timing.pass = total < tol::suite_seconds;
        timing.detail = "criteria 1-11 took " + fmt("%.1f", total) + " s (limit " + fmt("%.0f", tol::suite_seconds) + " s)";
        results.push_back(timing);
        emit(timing);
    }
    return results;
}

std::string format_outcome(const CriterionOutcome& o) {
    char head[32];
    std::snprintf(head, sizeof head, "[%s] %02d ", o.pass ? "PASS" : "FAIL", o.id);
    return head + o.title + ": " + o.detail + fmt(" (%.1f s)", o.seconds);
}

}  // namespace drchaos::tools
