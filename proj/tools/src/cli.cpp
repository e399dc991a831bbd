#include "drchaos/tools/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "drchaos/dynamics.hpp"
#include "drchaos/errors.hpp"
#include "drchaos/heat.hpp"
#include "drchaos/lorentz.hpp"
#include "drchaos/space_config.hpp"
#include "drchaos/spectrum.hpp"
#include "drchaos/spherical.hpp"
#include "drchaos/tools/manifest.hpp"
#include "drchaos/tools/verify.hpp"

namespace drchaos::tools {

namespace {

using nlohmann::json;

// ---- parsing helpers -----------------------------------------------------------------------

double parse_real(const std::string& s, const char* what) {
    if (s == "inf" || s == "infinity" || s == "Inf" || s == "+inf") return kInf;
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw DomainError(std::string(what) + ": cannot parse \"" + s + "\" as a number");
    }
    return v;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item, what));
    if (out.empty()) throw DomainError(std::string(what) + ": empty list");
    return out;
}

/// "start:step:stop", inclusive of stop up to rounding.
std::vector<double> parse_range(const std::string& s, const char* what) {
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_real(item, what));
    if (parts.size() != 3) throw DomainError(std::string(what) + ": expected start:step:stop, got \"" + s + "\"");
    const double a = parts[0], h = parts[1], b = parts[2];
    if (!(h > 0.0) || b < a) throw DomainError(std::string(what) + ": need step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
    if (n > 1'000'000) throw DomainError(std::string(what) + ": more than 10^6 samples");
    std::vector<double> out;
    for (long i = 0; i < n; ++i) out.push_back(a + static_cast<double>(i) * h);
    return out;
}

json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw DomainError(std::string(what) + ": expected a number or [re, im]");
}

double real_from_json(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_real(j.get<std::string>(), what);
    throw DomainError(std::string(what) + ": expected a number or \"inf\"");
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string label(double v) {
    if (std::isinf(v)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// ---- command context -----------------------------------------------------------------------

struct Globals {
    std::string space = "heisenberg1";
    double rho = 0.0;
    bool json = false;
    std::string out = "drchaos_out";
    double tol = 1e-13;
};

class Session {
public:
    Session(const Globals& g, bool rho_given, bool space_given, std::string command,
            const std::vector<std::string>& args, std::ostream& out)
        : g_(g), rho_given_(rho_given), space_given_(space_given), out_(out),
          manifest_(g.out, std::move(command), args) {
        manifest_.tolerances["ode_rtol"] = g.tol;
    }

    const Globals& globals() const { return g_; }
    bool space_given() const { return space_given_; }
    RunManifest& manifest() { return manifest_; }

    OdeOptions ode() const {
        OdeOptions o;
        o.rtol = g_.tol;
        return o;
    }

    SpaceConfig space(const std::string& name) {
        if (rho_given_) throw DomainError("--rho is only accepted by classify and sweep; other commands derive rho from --space");
        auto s = load_space(name);
        manifest_.space = json::parse(space_to_json(s));
        return s;
    }
    SpaceConfig space() { return space(g_.space); }

    /// rho for the commands that only need the spectral constant.
    double rho() {
        if (rho_given_) {
            if (!(g_.rho > 0.0)) throw DomainError("--rho must be positive");
            manifest_.space = {{"rho", g_.rho}};
            return g_.rho;
        }
        return space().params().rho();
    }

    /// Prints the result (JSON or a short listing), writes manifest.json, returns `code`.
    int finish(const json& result, int code = 0) {
        manifest_.finish();
        if (g_.json) {
            out_ << result.dump(2) << "\n";
        } else {
            for (const auto& [k, v] : result.items()) {
                out_ << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
            for (const auto& f : manifest_.outputs()) out_ << "wrote " << (manifest_.dir() / f).string() << "\n";
        }
        return code;
    }

    std::ostream& out() { return out_; }

private:
    Globals g_;
    bool rho_given_;
    bool space_given_;
    std::ostream& out_;
    RunManifest manifest_;
};

// ---- commands ------------------------------------------------------------------------------

int cmd_space(Session& s) {
    const auto space = s.space();
    json doc = json::parse(space_to_json(space));
    doc["dim"] = space.params().dim();
    doc["htype_defect"] = htype_defect(space.htype.J);
    s.manifest().emit("space.json", doc.dump(2) + "\n");
    return s.finish(doc);
}

struct PhiArgs {
    double re = 0.0, im = 0.0, r_max = 10.0;
    int points = 101;
    std::string method = "ode";
};

int cmd_phi(Session& s, const PhiArgs& a) {
    const auto space = s.space();
    const auto P = space.params();
    if (a.points < 2) throw DomainError("--points must be >= 2");
    if (!(a.r_max > 0.0)) throw DomainError("--r-max must be positive");
    const cplx lambda(a.re, a.im);
    std::vector<double> r;
    for (int i = 0; i < a.points; ++i) r.push_back(a.r_max * i / (a.points - 1));

    std::vector<cplx> ode, integral;
    if (a.method == "ode" || a.method == "both") ode = phi_values(lambda, P, r, s.ode());
    if (a.method == "integral" || a.method == "both") {
        for (double x : r) integral.push_back(phi_via_integral(lambda, x, P));
    }

    std::ostringstream csv;
    double worst = 0.0;
    if (a.method == "both") {
        csv << "r,ode_re,ode_im,int_re,int_im,abs_diff\n";
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double d = std::abs(ode[i] - integral[i]);
            worst = std::max(worst, d);
            csv << g17(r[i]) << ',' << g17(ode[i].real()) << ',' << g17(ode[i].imag()) << ','
                << g17(integral[i].real()) << ',' << g17(integral[i].imag()) << ',' << g17(d) << "\n";
        }
    } else {
        const auto& v = ode.empty() ? integral : ode;
        csv << "r,re,im\n";
        for (std::size_t i = 0; i < r.size(); ++i) {
            csv << g17(r[i]) << ',' << g17(v[i].real()) << ',' << g17(v[i].imag()) << "\n";
        }
    }
    s.manifest().parameters = {{"lambda", complex_json(lambda)}, {"r_max", a.r_max}, {"points", a.points},
                               {"method", a.method}};
    s.manifest().emit("phi.csv", csv.str());
    json result = {{"lambda", complex_json(lambda)}, {"points", a.points}, {"method", a.method}};
    if (a.method == "both") result["max_abs_diff"] = worst;
    return s.finish(result);
}

struct CfunArgs {
    std::string lambdas, range = "0.5:0.5:5";
    double window_lo = 10.0, window_hi = 25.0;
    int corrections = 0;
};

int cmd_cfun(Session& s, const CfunArgs& a) {
    const auto P = s.space().params();
    const auto lambdas = a.lambdas.empty() ? parse_range(a.range, "--range") : parse_list(a.lambdas, "--lambdas");
    CFitOptions opt;
    opt.window_lo = a.window_lo;
    opt.window_hi = a.window_hi;
    opt.correction_orders = a.corrections;
    opt.ode = s.ode();
    if (!(a.window_hi > a.window_lo) || a.window_lo < 1.0) throw DomainError("fit window must satisfy 1 <= lo < hi");
    if (a.corrections < 0 || a.corrections > 8) throw DomainError("--corrections must lie in [0, 8]");
    const auto table = fit_cfunction(lambdas, P, opt);

    std::ostringstream csv;
    csv << "lambda,c_re,c_im,cminus_re,cminus_im,abs_c,plancherel,residual\n";
    for (std::size_t i = 0; i < table.lambdas.size(); ++i) {
        const cplx c = table.c_values[i], cm = table.c_minus_values[i];
        csv << g17(table.lambdas[i]) << ',' << g17(c.real()) << ',' << g17(c.imag()) << ',' << g17(cm.real()) << ','
            << g17(cm.imag()) << ',' << g17(std::abs(c)) << ',' << g17(1.0 / std::norm(c)) << ','
            << g17(table.fit_residuals[i]) << "\n";
    }
    s.manifest().parameters = {{"lambdas", table.lambdas},
                               {"window", {a.window_lo, a.window_hi}},
                               {"correction_orders", a.corrections}};
    s.manifest().emit("cfun.csv", csv.str());
    double worst = 0.0;
    for (double r : table.fit_residuals) worst = std::max(worst, r);
    return s.finish({{"lambdas", table.lambdas.size()}, {"max_fit_residual", worst}});
}

struct GridArgs {
    double r_max = 30.0;
    int n = 1024;
};

PipelineOptions pipeline_options(const Session& s, const GridArgs& g) {
    PipelineOptions po;
    po.r_max = g.r_max;
    po.n = g.n;
    po.basis.ode = s.ode();
    po.basis.cfit.ode = s.ode();
    return po;
}

json grid_json(const GridArgs& g) { return {{"r_max", g.r_max}, {"n", g.n}}; }

int cmd_heat(Session& s, const std::string& times, const GridArgs& grid) {
    const auto P = s.space().params();
    const auto ts = parse_list(times, "--t");
    for (double t : ts) {
        if (!(t > 0.0)) throw DomainError("heat times must be positive");
    }
    const auto pl = build_pipeline(P, pipeline_options(s, grid));
    std::vector<HeatProfile> hs;
    for (double t : ts) hs.push_back(heat_profile(t, *pl.basis, pl.C()));

    std::ostringstream csv;
    csv << "r";
    for (double t : ts) csv << ",h_" << label(t);
    csv << "\n";
    const auto r = pl.grid->r();
    for (std::size_t j = 0; j < r.size(); ++j) {
        csv << g17(r[j]);
        for (const auto& h : hs) csv << ',' << g17(h.profile.values[j].real());
        csv << "\n";
    }
    json report;
    report["C"] = pl.C();
    report["calibration"] = {{"mass_half", pl.calibration.mass_half},
                             {"mass_two", pl.calibration.mass_two},
                             {"spread", pl.calibration.spread}};
    report["profiles"] = json::array();
    for (const auto& h : hs) {
        report["profiles"].push_back({{"t", h.t},
                                      {"mass", radial_integral(h.profile).real()},
                                      {"resolved_radius", h.resolved_radius},
                                      {"tail_power", h.tail_power},
                                      {"max_imag", h.max_imag}});
    }
    s.manifest().parameters = {{"t", ts}, {"grid", grid_json(grid)}};
    s.manifest().tolerances["calibration_spread"] = 1e-2;
    s.manifest().emit("heat.csv", csv.str());
    s.manifest().emit("heat.json", report.dump(2) + "\n");
    return s.finish(report);
}

/// Reads "r,re[,im]" rows; a non-numeric first line is taken as a header.
std::pair<std::vector<double>, std::vector<cplx>> read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path);
    std::vector<double> r;
    std::vector<cplx> v;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            first = false;
            double dummy;
            const auto [p, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), dummy);
            if (ec != std::errc()) continue;
        }
        if (cells.size() < 2) throw DomainError(path + ": each row needs r and a value");
        r.push_back(parse_real(cells[0], "profile radius"));
        v.emplace_back(parse_real(cells[1], "profile value"), cells.size() > 2 ? parse_real(cells[2], "profile value") : 0.0);
    }
    return {std::move(r), std::move(v)};
}

struct LorentzArgs {
    std::string input, p, q, radii;
};

int cmd_lorentz(Session& s, const LorentzArgs& a) {
    const auto P = s.space().params();
    const auto idx = LorentzIndex::make(parse_real(a.p, "--p"), parse_real(a.q, "--q"));
    auto [r, v] = read_profile_csv(a.input);
    const auto grid = RadialGrid::from_samples(std::move(r), P);
    const RadialProfile f(grid, std::move(v));

    const double norm = lorentz_norm(f, idx);
    // Tail check: the last 5% of the radii should carry nothing visible next to the peak.
    const double sup = f.sup_norm();
    double tail = 0.0;
    const auto rr = grid->r();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (rr[i] >= 0.95 * grid->r_max()) tail = std::max(tail, std::abs(f.values[i]));
    }
    const double tail_ratio = sup > 0.0 ? tail / sup : 0.0;
    json report = {{"p", number(idx.p())},
                   {"q", number(idx.q())},
                   {"norm", norm},
                   {"truncation_radius", grid->r_max()},
                   {"tail_ratio", tail_ratio},
                   {"status", tail_ratio <= 1e-6 ? "ok" : "truncated: profile has not decayed at the last radius"}};
    if (!a.radii.empty()) {
        const auto radii = parse_list(a.radii, "--radii");
        const auto m = membership_diagnostic(f, idx, radii);
        report["membership"] = {{"verdict", to_string(m.verdict)},
                                {"growth_exponent", m.growth_exponent},
                                {"radii", m.radii},
                                {"norms", m.norms}};
    }
    s.manifest().parameters = {{"input", a.input}, {"p", number(idx.p())}, {"q", number(idx.q())}};
    s.manifest().tolerances["tail_ratio"] = 1e-6;
    s.manifest().emit("lorentz.json", report.dump(2) + "\n");
    return s.finish(report);
}

json verdict_json(const ChaosVerdict& v, double p, double q, double c, double rho) {
    const auto sc = spectral_constants(p, rho);
    json doc = {{"p", number(p)},
                {"q", number(q)},
                {"c", c},
                {"rho", rho},
                {"c_p", sc.c_p},
                {"hypercyclic", to_string(v.hypercyclic)},
                {"chaotic", to_string(v.chaotic)},
                {"subspace_chaotic", to_string(v.subspace_chaotic)},
                {"periodic_points", to_string(v.periodic_points)},
                {"coherent", v.coherent()}};
    static const char* keys[] = {"hypercyclic", "chaotic", "subspace_chaotic", "periodic_points"};
    json cites = json::object();
    for (std::size_t i = 0; i < v.citations.size() && i < 4; ++i) cites[keys[i]] = v.citations[i];
    doc["citations"] = cites;
    doc["notes"] = v.notes;
    return doc;
}

int cmd_classify(Session& s, const std::string& ps, const std::string& qs, double c) {
    const double rho = s.rho();
    const double p = parse_real(ps, "--p"), q = parse_real(qs, "--q");
    const auto v = classify_dynamics(p, q, c, rho);
    const auto doc = verdict_json(v, p, q, c, rho);
    s.manifest().parameters = {{"p", number(p)}, {"q", number(q)}, {"c", c}};
    s.manifest().emit("verdict.json", doc.dump(2) + "\n");
    return s.finish(doc);
}

int cmd_sweep(Session& s) {
    const double rho = s.rho();
    std::ostringstream csv;
    csv << "p,q,c_offset,c,hypercyclic,chaotic,subspace_chaotic,periodic_points\n";
    int cells = 0, invalid = 0;
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, kInf}) {
        const double cp = spectral_constants(p, rho).c_p;
        for (double q : {1.0, 2.0, kInf}) {
            for (double off : {-0.1, 0.0, 0.1}) {
                ++cells;
                const double c = cp + off;
                csv << label(p) << ',' << label(q) << ',' << label(off) << ',' << g17(c);
                try {
                    const auto v = classify_dynamics(p, q, c, rho);
                    csv << ',' << to_string(v.hypercyclic) << ',' << to_string(v.chaotic) << ','
                        << to_string(v.subspace_chaotic) << ',' << to_string(v.periodic_points) << "\n";
                } catch (const DomainError&) {
                    ++invalid;
                    csv << ",invalid,invalid,invalid,invalid\n";
                }
            }
        }
    }
    s.manifest().parameters = {{"p", {1.0, 1.5, 2.0, 3.0, 4.0, "inf"}}, {"q", {1.0, 2.0, "inf"}}, {"c_offsets", {-0.1, 0.0, 0.1}}};
    s.manifest().emit("sweep.csv", csv.str());
    return s.finish({{"rho", rho}, {"cells", cells}, {"invalid_cells", invalid}});
}

struct OrbitArgs {
    std::string spec, times;
    GridArgs grid;
};

int cmd_orbit(Session& s, const OrbitArgs& a) {
    std::ifstream in(a.spec);
    if (!in) throw DomainError("cannot read " + a.spec);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw DomainError(a.spec + ": " + e.what());
    }
    if (!doc.is_object()) throw DomainError(a.spec + ": expected a JSON object");

    SpaceConfig space = [&] {
        if (!s.space_given() && doc.contains("space")) {
            const auto& js = doc["space"];
            if (js.is_string()) return s.space(js.get<std::string>());
            auto sp = parse_space_json(js.dump());
            s.manifest().space = json::parse(space_to_json(sp));
            return sp;
        }
        return s.space();
    }();
    const auto P = space.params();
    const double c = doc.contains("c") ? real_from_json(doc["c"], "c") : 0.0;
    EigenCombination combo({c, 0.0, P});
    if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty()) {
        throw DomainError(a.spec + ": needs a non-empty \"terms\" array");
    }
    for (const auto& term : doc["terms"]) {
        const cplx coef = term.contains("a") ? complex_from_json(term["a"], "a") : cplx(1.0);
        if (term.contains("lambda")) {
            combo.add(coef, complex_from_json(term["lambda"], "lambda"));
        } else if (term.contains("z")) {
            combo.add_with_exponent(coef, complex_from_json(term["z"], "z"));
        } else {
            throw DomainError(a.spec + ": each term needs \"lambda\" or \"z\"");
        }
    }
    std::vector<LorentzIndex> norms;
    if (doc.contains("norms")) {
        for (const auto& n : doc["norms"]) norms.push_back(LorentzIndex::make(real_from_json(n.at("p"), "p"), real_from_json(n.at("q"), "q")));
    }
    const auto times = parse_range(a.times, "--times");
    const auto grid = RadialGrid::build(a.grid.r_max, a.grid.n, P);
    const auto orbit = orbit_series(combo, times, norms, grid);

    std::ostringstream csv;
    csv << "t,sup";
    for (const auto& n : norms) csv << ",lorentz_p" << label(n.p()) << "_q" << label(n.q());
    csv << "\n";
    for (const auto& sample : orbit.samples) {
        csv << g17(sample.t) << ',' << g17(sample.sup_norm);
        for (double v : sample.lorentz) csv << ',' << g17(v);
        csv << "\n";
    }
    json terms = json::array();
    for (const auto& t : combo.terms()) {
        terms.push_back({{"a", complex_json(t.a)}, {"lambda", complex_json(t.lambda)}, {"z", complex_json(t.z)}});
    }
    s.manifest().parameters = {{"spec", a.spec}, {"c", c}, {"terms", terms}, {"times", a.times}, {"grid", grid_json(a.grid)}};
    s.manifest().tolerances["eigen_residual"] = 1e-6;
    s.manifest().emit("orbit.csv", csv.str());
    return s.finish({{"samples", orbit.samples.size()}, {"max_eigen_residual", orbit.max_eigen_residual}, {"terms", terms}});
}

struct HerzArgs {
    std::string p, q = "inf";
    double t = 1.0, c = 0.0, center = 0.0, width = 1.0;
    GridArgs grid;
};

int cmd_herz(Session& s, const HerzArgs& a) {
    const auto P = s.space().params();
    const double p = parse_real(a.p, "--p"), q = parse_real(a.q, "--q");
    if (!(a.width > 0.0)) throw DomainError("--width must be positive");
    if (!(a.t > 0.0)) throw DomainError("--t must be positive");
    const auto pl = build_pipeline(P, pipeline_options(s, a.grid));
    const auto f = RadialProfile::sample(pl.grid, [&](double r) {
        return cplx(std::exp(-(r - a.center) * (r - a.center) / a.width));
    });
    const auto rep = herz_bound_report(f, p, q, {a.c, a.t, P}, pl);
    json doc = {{"p", number(p)},
                {"q", number(q)},
                {"t", a.t},
                {"c", a.c},
                {"ratio", rep.ratio},
                {"bound", rep.bound},
                {"within_bound", rep.within_bound},
                {"hhat_boundary", rep.hhat_boundary},
                {"hhat_expected", rep.hhat_expected}};
    s.manifest().parameters = {{"p", number(p)}, {"q", number(q)}, {"t", a.t}, {"c", a.c},
                               {"profile", {{"center", a.center}, {"width", a.width}}}, {"grid", grid_json(a.grid)}};
    s.manifest().tolerances["bound_slack"] = 1.05;
    s.manifest().emit("herz.json", doc.dump(2) + "\n");
    return s.finish(doc);
}

struct WttArgs {
    double p = 4.0, c = 0.5, t = 1.0, tp = 1.0, re_max = 10.0;
};

int cmd_wtt(Session& s, const WttArgs& a) {
    const auto P = s.space().params();
    const auto rep = wtt_window_check(a.c, a.t, a.tp, a.p, P, a.re_max);
    json zeros = json::array();
    for (const cplx z : rep.zeros) zeros.push_back(complex_json(z));
    json doc = {{"p", rep.p},
                {"c", rep.c},
                {"t", rep.t},
                {"t_prime", rep.t_prime},
                {"rho", rep.rho},
                {"c_p", rep.c_p},
                {"eps", rep.eps},
                {"strip_half_width", rep.strip_half_width},
                {"c_below_cp", rep.c_below_cp},
                {"analyticity", rep.analyticity},
                {"growth_condition", rep.growth_condition}};
    if (rep.c_below_cp) {
        doc["min_abs_hhat"] = rep.min_abs_hhat;
        doc["min_abs_factor"] = rep.min_abs_factor;
        doc["nonvanishing"] = rep.nonvanishing;
        doc["decays"] = rep.decays;
        doc["edge_abs_hhat"] = rep.edge_abs_hhat;
    } else {
        doc["zeros"] = zeros;
        doc["zero_residuals"] = rep.zero_residuals;
    }
    s.manifest().parameters = {{"p", a.p}, {"c", a.c}, {"t", a.t}, {"t_prime", a.tp}, {"re_max", a.re_max}};
    s.manifest().emit("wtt.json", doc.dump(2) + "\n");
    return s.finish(doc);
}

int cmd_verify(Session& s, const std::vector<int>& only) {
    VerifyOptions opt;
    opt.space = s.globals().space;
    opt.only = only;
    opt.ode = s.ode();
    s.space();  // validates and records the space
    const bool quiet = s.globals().json;
    auto& out = s.out();
    const auto results = run_acceptance(opt, [&](const CriterionOutcome& o) {
        if (!quiet) out << format_outcome(o) << std::endl;
    });
    json doc = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        doc.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    }
    s.manifest().parameters = {{"only", only}};
    s.manifest().emit("verify.json", doc.dump(2) + "\n");
    s.manifest().finish();
    if (quiet) out << json({{"all_pass", all}, {"criteria", doc}}).dump(2) << "\n";
    else out << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spherical analysis and heat-semigroup dynamics on Damek-Ricci spaces", "drchaos"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    Globals g;
    auto* space_opt = app.add_option("--space", g.space, "Builtin space (heisenberg<k>, quaternionic) or JSON config path")
                          ->capture_default_str();
    auto* rho_opt = app.add_option("--rho", g.rho, "rho for classify/sweep; not allowed together with --space");
    space_opt->excludes(rho_opt);
    app.add_flag("--json", g.json, "Print the result as JSON on stdout");
    app.add_option("--out", g.out, "Output directory for CSV/JSON artifacts and manifest.json")->capture_default_str();
    app.add_option("--tol", g.tol, "Relative tolerance of the radial ODE integrator")
        ->check(CLI::Range(1e-15, 1e-3))
        ->capture_default_str();

    auto* space_cmd = app.add_subcommand("space", "Describe a space: m, l, Q, rho and the H-type generators");

    PhiArgs phi;
    auto* phi_cmd = app.add_subcommand("phi", "Spherical function phi_lambda on a uniform radius grid (phi.csv)");
    phi_cmd->add_option("--lambda", phi.re, "Real part of lambda")->required();
    phi_cmd->add_option("--lambda-im", phi.im, "Imaginary part of lambda")->capture_default_str();
    phi_cmd->add_option("--r-max", phi.r_max, "Largest radius")->capture_default_str();
    phi_cmd->add_option("--points", phi.points, "Number of radii, including 0")->capture_default_str();
    phi_cmd->add_option("--method", phi.method, "ode, integral (Poisson-kernel integral) or both")
        ->check(CLI::IsMember({"ode", "integral", "both"}))
        ->capture_default_str();

    CfunArgs cfun;
    auto* cfun_cmd = app.add_subcommand("cfun", "Fitted c-function and Plancherel density (cfun.csv)");
    auto* lam_opt = cfun_cmd->add_option("--lambdas", cfun.lambdas, "Comma-separated lambdas");
    cfun_cmd->add_option("--range", cfun.range, "start:step:stop")->capture_default_str()->excludes(lam_opt);
    cfun_cmd->add_option("--window-lo", cfun.window_lo, "Fit window start")->capture_default_str();
    cfun_cmd->add_option("--window-hi", cfun.window_hi, "Fit window end")->capture_default_str();
    cfun_cmd->add_option("--corrections", cfun.corrections, "Subleading exponential orders in the fit basis")
        ->capture_default_str();

    std::string heat_t = "0.5,1,2";
    GridArgs heat_grid;
    auto* heat_cmd = app.add_subcommand("heat", "Heat kernel profiles h_t by Plancherel synthesis (heat.csv, heat.json)");
    heat_cmd->add_option("--t", heat_t, "Comma-separated times")->capture_default_str();
    heat_cmd->add_option("--r-max", heat_grid.r_max, "Radial grid extent")->capture_default_str();
    heat_cmd->add_option("--n", heat_grid.n, "Radial grid nodes (multiple of 32)")->capture_default_str();

    LorentzArgs lor;
    auto* lor_cmd = app.add_subcommand("lorentz", "Lorentz quasi-norm of a tabulated radial profile (lorentz.json)");
    lor_cmd->add_option("--input", lor.input, "CSV with columns r,re[,im]")->required()->check(CLI::ExistingFile);
    lor_cmd->add_option("--p", lor.p, "p in [1, inf]")->required();
    lor_cmd->add_option("--q", lor.q, "q in [1, inf]")->required();
    lor_cmd->add_option("--radii", lor.radii, "Comma-separated truncation radii for a membership diagnostic");

    std::string cls_p, cls_q;
    double cls_c = 0.0;
    auto* cls_cmd = app.add_subcommand("classify", "Chaos verdict for T_t = e^{-t(Delta - c)} on L^{p,q} (verdict.json)");
    cls_cmd->add_option("--p", cls_p, "p in [1, inf]")->required();
    cls_cmd->add_option("--q", cls_q, "q in [1, inf]")->required();
    cls_cmd->add_option("--c", cls_c, "Shift c")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Decision table over p, q and c around c_p (sweep.csv)");

    OrbitArgs orb;
    auto* orb_cmd = app.add_subcommand("orbit", "Norms along the orbit of a combination of eigenfunctions (orbit.csv)");
    orb_cmd->add_option("--spec", orb.spec, "combo.json: {c, terms: [{a, lambda | z}], norms: [{p, q}]}")
        ->required()
        ->check(CLI::ExistingFile);
    orb_cmd->add_option("--times", orb.times, "start:step:stop")->required();
    orb_cmd->add_option("--r-max", orb.grid.r_max, "Radial grid extent")->capture_default_str();
    orb_cmd->add_option("--n", orb.grid.n, "Radial grid nodes (multiple of 32)")->capture_default_str();

    HerzArgs herz;
    auto* herz_cmd = app.add_subcommand("herz", "Herz operator-norm bound for T_t on a Gaussian bump (herz.json)");
    herz_cmd->add_option("--p", herz.p, "p in (1, inf)")->required();
    herz_cmd->add_option("--q", herz.q, "q in [1, inf]")->capture_default_str();
    herz_cmd->add_option("--t", herz.t, "Time")->capture_default_str();
    herz_cmd->add_option("--c", herz.c, "Shift c")->capture_default_str();
    herz_cmd->add_option("--center", herz.center, "Bump centre")->capture_default_str();
    herz_cmd->add_option("--width", herz.width, "Bump width w in exp(-(r - centre)^2 / w)")->capture_default_str();

    WttArgs wtt;
    auto* wtt_cmd = app.add_subcommand("wtt", "Hypotheses of the Wiener-Tauberian argument on the strip (wtt.json)");
    wtt_cmd->add_option("--p", wtt.p, "p in (2, inf)")->capture_default_str();
    wtt_cmd->add_option("--c", wtt.c, "Shift c")->capture_default_str();
    wtt_cmd->add_option("--t", wtt.t, "t > 0")->capture_default_str();
    wtt_cmd->add_option("--tp", wtt.tp, "t' > 0")->capture_default_str();
    wtt_cmd->add_option("--re-max", wtt.re_max, "Grid extent in Re lambda")->capture_default_str();

    std::vector<int> only;
    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite; exit 0 only when every criterion passes");
    verify_cmd->add_option("--only", only, "Comma-separated criterion numbers (1-12)")->delimiter(',');

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        auto* sub = app.get_subcommands().front();
        Session s(g, rho_opt->count() > 0, space_opt->count() > 0, sub->get_name(), args, out);
        if (sub == space_cmd) return cmd_space(s);
        if (sub == phi_cmd) return cmd_phi(s, phi);
        if (sub == cfun_cmd) return cmd_cfun(s, cfun);
        if (sub == heat_cmd) return cmd_heat(s, heat_t, heat_grid);
        if (sub == lor_cmd) return cmd_lorentz(s, lor);
        if (sub == cls_cmd) return cmd_classify(s, cls_p, cls_q, cls_c);
        if (sub == sweep_cmd) return cmd_sweep(s);
        if (sub == orb_cmd) return cmd_orbit(s, orb);
        if (sub == herz_cmd) return cmd_herz(s, herz);
        if (sub == wtt_cmd) return cmd_wtt(s, wtt);
        if (sub == verify_cmd) return cmd_verify(s, only);
        err << "drchaos: unhandled subcommand\n";
        return 2;
    } catch (const DomainError& e) {
        err << "drchaos: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        err << "drchaos: numerical contract failed: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "drchaos: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "drchaos: " << e.what() << "\n";
        return 1;
    }
}

int run_command(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_command(args, std::cout, std::cerr);
}

}  // namespace drchaos::tools
