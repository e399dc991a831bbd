#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "drchaos/errors.hpp"
#include "drchaos/heat.hpp"
#include "drchaos/lorentz.hpp"
#include "support.hpp"

using namespace drchaos;
using drtest::Gen;

namespace {

/// The quasi-norm by brute force: the alpha integral on 4000 log-spaced levels spanning
/// [min|f|, max|f|], trapezoidal in log alpha, with d_f recomputed at every level.
double alpha_grid_norm(const RadialProfile& f, double p, double q) {
    const double top = f.sup_norm();
    double bottom = top;
    for (const cplx v : f.values) {
        if (std::abs(v) > 0.0) bottom = std::min(bottom, std::abs(v));
    }
    const int n = 4000;
    const double lo = std::log(bottom), hi = std::log(top);
    double acc = 0.0, sup = 0.0, prev = 0.0;
    for (int i = 0; i < n; ++i) {
        const double la = lo + (hi - lo) * i / (n - 1);
        const double alpha = std::exp(la);
        const double term = alpha * std::pow(distribution_function(f, alpha), 1.0 / p);
        sup = std::max(sup, term);
        const double val = std::pow(term, q);
        if (i > 0) acc += 0.5 * (val + prev) * (hi - lo) / (n - 1);
        prev = val;
    }
    return std::isinf(q) ? sup : std::pow(q * acc, 1.0 / q);
}

}  // namespace

TEST_CASE("index validation") {
    CHECK_NOTHROW(LorentzIndex::make(1.0, 1.0));
    CHECK_NOTHROW(LorentzIndex::make(kInf, kInf));
    CHECK_THROWS_AS(LorentzIndex::make(1.0, 2.0), DomainError);
    CHECK_THROWS_AS(LorentzIndex::make(kInf, 2.0), DomainError);
    CHECK_THROWS_AS(LorentzIndex::make(0.5, 1.0), DomainError);
    CHECK_THROWS_AS(LorentzIndex::make(2.0, 0.9), DomainError);
    const auto i4 = LorentzIndex::make(4.0, 1.0);
    CHECK(i4.p_prime() == doctest::Approx(4.0 / 3.0));
    CHECK(i4.gamma_p() == doctest::Approx(-0.5));
    CHECK(LorentzIndex::make(1.0, 1.0).p_prime() == kInf);
    CHECK(LorentzIndex::make(kInf, kInf).p_prime() == 1.0);
}

TEST_CASE("indicator of a ball") {
    const auto P = drtest::heis1();
    const auto g = RadialGrid::build(30.0, 1024, P);
    const double R = 7.5;  // a panel boundary: the node sum is the Gauss-Legendre rule on [0, R]
    const auto f = RadialProfile::sample(g, [&](double r) { return cplx(r <= R ? 1.0 : 0.0); });
    const double V = ball_volume(R, P);
    CHECK(distribution_function(f, 0.5) == doctest::Approx(V).epsilon(1e-10));
    CHECK(distribution_function(f, 1e-9) == doctest::Approx(V).epsilon(1e-10));
    CHECK(distribution_function(f, 1.0) == 0.0);
    for (double p : {1.5, 2.0, 4.0}) {
        for (double q : {1.0, 2.0, 7.0, kInf}) {
            CHECK(lorentz_norm(f, LorentzIndex::make(p, q)) == doctest::Approx(std::pow(V, 1.0 / p)).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(distribution_function(f, 0.0), DomainError);
}

TEST_CASE("distribution function is non-increasing") {
    const auto& pl = drtest::pipeline_heis1();
    const auto h1 = heat_profile(1.0, *pl.basis, pl.C()).profile;
    double prev = kInf;
    for (double a = 1e-10; a < 1.0; a *= 1.7) {
        const double d = distribution_function(h1, a);
        CHECK(d <= prev);
        prev = d;
    }
    // alpha = max/2 by a direct sum over the nodes above the level.
    const double alpha = 0.5 * h1.sup_norm();
    double direct = 0.0;
    for (std::size_t i = 0; i < h1.size(); ++i) {
        if (std::abs(h1.values[i]) > alpha) direct += pl.grid->w()[i] * pl.grid->dens()[i];
    }
    CHECK(distribution_function(h1, alpha) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("L^{p,p} is L^p") {
    const auto& pl = drtest::pipeline_heis1();
    const auto h1 = heat_profile(1.0, *pl.basis, pl.C()).profile;
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        CHECK(lorentz_norm(h1, LorentzIndex::make(p, p)) == doctest::Approx(lp_norm(h1, p)).epsilon(1e-10));
    }
    CHECK(lorentz_norm(h1, LorentzIndex::make(kInf, kInf)) == doctest::Approx(h1.sup_norm()).epsilon(1e-14));
    CHECK(lp_norm(h1, kInf) == h1.sup_norm());
}

TEST_CASE("exact evaluation agrees with the alpha-grid quadrature") {
    const auto& pl = drtest::pipeline_quat();
    const auto f = RadialProfile::sample(pl.grid, [](double r) { return cplx(std::exp(-0.5 * r * r) + 0.2 * std::exp(-r * r)); });
    for (auto [p, q] : {std::pair{2.0, 1.0}, {3.0, 2.0}, {4.0, kInf}, {1.5, 3.0}}) {
        const double exact = lorentz_norm(f, LorentzIndex::make(p, q));
        CHECK(alpha_grid_norm(f, p, q) == doctest::Approx(exact).epsilon(2e-2));
    }
}

TEST_CASE("quasi-norm properties on random profiles") {
    const auto& pl = drtest::pipeline_heis1();
    Gen gen(99);
    for (int k = 0; k < 10; ++k) {
        const double c = gen.uniform(0, 4), w = gen.uniform(0.3, 2.0), a = gen.uniform(-1, 1);
        const auto f = RadialProfile::sample(pl.grid, [&](double r) {
            return cplx(std::exp(-(r - c) * (r - c) / w), a * std::exp(-r));
        });
        std::vector<cplx> twice(f.values);
        for (auto& v : twice) v *= 2.0;
        const RadialProfile g(pl.grid, twice);
        for (double p : {1.5, 2.0, 4.0}) {
            double prev = kInf;
            for (double q : {1.0, 1.5, 2.0, 4.0, kInf}) {
                const auto idx = LorentzIndex::make(p, q);
                const double n = lorentz_norm(f, idx);
                CHECK(n > 0.0);
                CHECK(lorentz_norm(g, idx) == doctest::Approx(2 * n).epsilon(1e-10));
                CHECK(n <= prev * 1.02);
                prev = n;
            }
            // Truncation monotonicity.
            double last = 0.0;
            for (double R : {2.0, 5.0, 10.0, 20.0, 30.0}) {
                const double n = lorentz_norm(f.truncated(R), LorentzIndex::make(p, 2.0));
                CHECK(n >= last);
                last = n;
            }
        }
    }
    CHECK(lorentz_norm(RadialProfile::zeros(pl.grid), LorentzIndex::make(2.0, 1.0)) == 0.0);
}

TEST_CASE("growth classification bands") {
    const auto radii = default_membership_radii();
    std::vector<double> flat, steep, mild;
    for (double r : radii) {
        flat.push_back(3.0);
        steep.push_back(std::pow(r, 0.2));
        mild.push_back(std::pow(r, 0.02));
    }
    CHECK(classify_growth(radii, flat).verdict == Membership::finite);
    CHECK(classify_growth(radii, steep).verdict == Membership::divergent);
    CHECK(classify_growth(radii, steep).growth_exponent == doctest::Approx(0.2));
    CHECK(classify_growth(radii, mild).verdict == Membership::inconclusive);
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(classify_growth(one, one), DomainError);
}

TEST_CASE("membership of spherical functions") {
    const auto& pl = drtest::pipeline_heis1();  // rho = 1
    const auto radii = default_membership_radii();
    auto verdict = [&](cplx lambda, double p, double q) {
        return membership_diagnostic(lambda, LorentzIndex::make(p, q), pl.grid, radii).verdict;
    };
    CHECK(verdict(1.0, 2.0, kInf) == Membership::finite);
    CHECK(verdict(0.0, 2.0, kInf) == Membership::divergent);
    CHECK(verdict(cplx(0, 1.0 / 3.0), 3.0, kInf) == Membership::finite);
    CHECK(verdict(cplx(0, 1.0 / 3.0), 3.0, 1.0) == Membership::divergent);
    CHECK(verdict(1.0, 2.0, 2.0) == Membership::divergent);
    const std::vector<double> beyond{10.0, 40.0};
    CHECK_THROWS_AS(membership_diagnostic(1.0, LorentzIndex::make(2.0, kInf), pl.grid, beyond), DomainError);
}
