#include <doctest.h>

#include <cmath>
#include <numbers>

#include "drchaos/errors.hpp"
#include "drchaos/spherical.hpp"
#include "support.hpp"

using namespace drchaos;
using drtest::Gen;

namespace {

// phi_lambda(a_r) = 2F1((Q + 2 i lambda)/2, (Q - 2 i lambda)/2; (m + l + 1)/2; -sinh^2(r/2)),
// the Jacobi-function form, evaluated at 30 digits with mpmath.
struct JacobiRef {
    double re_lambda, im_lambda, r;
    double re, im;
};

const JacobiRef kHeis1[] = {
    {0, 0, 0.5, 0.96938906029491891, 0},          {0, 0, 2, 0.62816813722977245, 0},
    {0, 0, 10, 0.0015644050573891645, 0},         {0.5, 0, 1, 0.85732562950521175, 0},
    {0.5, 0, 5, 0.037892378645901831, 0},         {0.5, 0, 10, -0.00027091498102751445, 0},
    {1, 0, 2, 0.36178616945640802, 0},            {1, 0, 5, -0.014304155345582291, 0},
    {2, 0, 1, 0.51016815594883608, 0},            {2, 0, 10, 1.5044421418874665e-5, 0},
    {1, 0.3, 0.5, 0.94196985235266565, -0.017833734382210359},
    {1, 0.3, 2, 0.36715058882234862, -0.13685554877134883},
    {1, 0.3, 10, -0.00031146441772107863, -0.00087109038223444412},
};

const JacobiRef kQuat[] = {
    {0, 0, 1, 0.68355806162971372, 0},            {0, 0, 5, 0.0011846509941684458, 0},
    {0, 0, 10, 1.521764150133611e-8, 0},          {0.5, 0, 2, 0.22591776453360677, 0},
    {0.5, 0, 10, -1.2797870255640658e-9, 0},      {1, 0, 5, 4.8863024582442457e-5, 0},
    {2, 0, 0.5, 0.85208389642848453, 0},          {2, 0, 10, -9.9214707112193587e-11, 0},
    {1, 0.3, 1, 0.64475690221946714, -0.024752240855695115},
    {1, 0.3, 5, -8.4919491508953676e-5, -0.00024259224095679038},
    {1, 0.3, 10, 3.6096149635064866e-9, -2.8118836304450832e-9},
};

/// 1 / int_N ((1 + u^2/4)^2 + v^2)^{-Q} dV dZ in closed form (l >= 1): polar coordinates in
/// V and Z reduce both radial integrals to Beta functions.
double poisson_constant_closed_form(const DRSpaceParams& P) {
    const double m = P.m(), l = P.l(), Q = P.Q();
    const double integral = unit_sphere_area(P.m()) * unit_sphere_area(P.l()) * 0.25 * std::pow(2.0, m) *
                            std::beta(l / 2, Q - l / 2) * std::beta(m / 2, m / 2 + l);
    return 1.0 / integral;
}

void check_reference(const JacobiRef* begin, const JacobiRef* end, const DRSpaceParams& P, bool with_integral) {
    for (auto it = begin; it != end; ++it) {
        const cplx lambda(it->re_lambda, it->im_lambda);
        const cplx expected(it->re, it->im);
        const double r[] = {it->r};
        const cplx ode = phi_values(lambda, P, r).front();
        INFO("lambda = " << lambda << ", r = " << it->r);
        CHECK(std::abs(ode - expected) <= 1e-9 * std::abs(expected) + 1e-15);
        if (with_integral && it->r <= 5.0) {
            CHECK(std::abs(phi_via_integral(lambda, it->r, P) - expected) <= 1e-7 * (1.0 + std::abs(expected)));
        }
    }
}

}  // namespace

TEST_CASE("unit sphere areas") {
    CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
    CHECK(unit_sphere_area(2) == doctest::Approx(2 * std::numbers::pi));
    CHECK(unit_sphere_area(3) == doctest::Approx(4 * std::numbers::pi));
    CHECK_THROWS_AS(unit_sphere_area(0), DomainError);
}

TEST_CASE("Poisson normalisation against the Beta-function closed form") {
    for (const auto& P : {drtest::heis1(), drtest::quat(), build_heisenberg(2).params}) {
        const double C = normalize_poisson(P);
        CHECK(C == doctest::Approx(poisson_constant_closed_form(P)).epsilon(1e-9));
    }
    CHECK(normalize_poisson(drtest::heis1()) == doctest::Approx(1.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-10));
    // Tighter quadrature changes nothing visible.
    const auto P = drtest::quat();
    CHECK(std::abs(normalize_poisson(P, 1e-10) - normalize_poisson(P, 1e-13)) < 1e-8 * normalize_poisson(P));
}

TEST_CASE("Poisson kernel identities") {
    const auto P = drtest::quat();
    const double C = normalize_poisson(P);
    CHECK(poisson_kernel(0.0, 0.0, 0.0, P, C) == doctest::Approx(C));
    Gen gen(3);
    for (int k = 0; k < 100; ++k) {
        const double t = gen.uniform(-3, 3), u = gen.uniform(0, 4), v = gen.uniform(0, 4);
        const double lhs = poisson_kernel(t, u, v, P, C);
        const double rhs = poisson_kernel(0.0, std::exp(-t / 2) * u, std::exp(-t) * v, P, C) * std::exp(-P.Q() * t);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
    CHECK_THROWS_AS(poisson_kernel(0.0, -1.0, 0.0, P, C), DomainError);
}

TEST_CASE("ODE evaluator against the Jacobi-function reference") {
    check_reference(std::begin(kHeis1), std::end(kHeis1), drtest::heis1(), false);
    check_reference(std::begin(kQuat), std::end(kQuat), drtest::quat(), false);
}

TEST_CASE("Poisson-integral evaluator against the Jacobi-function reference") {
    check_reference(std::begin(kHeis1), std::end(kHeis1), drtest::heis1(), true);
    check_reference(std::begin(kQuat), std::end(kQuat), drtest::quat(), true);
}

TEST_CASE("l = 0 closed form") {
    const auto P = drtest::real_hyperbolic();
    for (double lambda : {0.3, 1.0, 2.5}) {
        std::vector<double> r{0.2, 1.0, 4.0, 9.0, 20.0};
        const auto v = phi_values(lambda, P, r);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double exact = std::sin(lambda * r[i]) / (2 * lambda * std::sinh(r[i] / 2));
            CHECK(std::abs(v[i].real() - exact) <= 1e-10 * std::abs(exact) + 1e-14);
        }
    }
}

TEST_CASE("normalisation and symmetry") {
    Gen gen(17);
    for (const auto& P : {drtest::heis1(), drtest::quat()}) {
        const std::vector<double> radii{0.0, 0.3, 1.0, 4.0, 12.0, 25.0};
        for (const cplx v : phi_values(cplx(0, -P.rho()), P, radii)) CHECK(std::abs(v - 1.0) < 1e-8);
        for (const cplx v : phi_values(cplx(0, P.rho()), P, radii)) CHECK(std::abs(v - 1.0) < 1e-8);
        for (int k = 0; k < 10; ++k) {
            const cplx lambda = gen.complex(-4, 4, -1.5 * P.rho(), 1.5 * P.rho());
            const auto a = phi_values(lambda, P, radii);
            const auto b = phi_values(-lambda, P, radii);
            CHECK(std::abs(a[0] - 1.0) < 1e-12);
            for (std::size_t i = 0; i < radii.size(); ++i) {
                CHECK(std::abs(a[i] - b[i]) <= 1e-8 * std::max(1.0, std::abs(a[i])));
            }
            // phi(e) = 1 from the integral as well, anywhere inside the guard strip.
            const cplx in_guard(lambda.real(), 0.9 * P.rho() * std::tanh(lambda.imag()));
            CHECK(std::abs(phi_via_integral(in_guard, 0.0, P) - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("integral evaluator enforces the guard strip") {
    const auto P = drtest::heis1();
    CHECK_THROWS_AS(phi_via_integral(cplx(0, -1.0), 1.0, P), DomainError);
    CHECK_THROWS_AS(phi_via_integral(cplx(0.5, 0.97), 1.0, P), DomainError);
    CHECK_NOTHROW(phi_via_integral(cplx(1.5, 0.0), 2.0, P));
    const double r[] = {2.0};
    CHECK(std::abs(phi_via_integral(1.5, 2.0, P) - phi_values(1.5, P, r).front()) < 1e-6);
}

TEST_CASE("bounded on the strip S_1") {
    Gen gen(23);
    for (const auto& P : {drtest::heis1(), drtest::quat()}) {
        std::vector<double> radii;
        for (double r = 0.5; r <= 20.0; r += 0.5) radii.push_back(r);
        for (int k = 0; k < 10; ++k) {
            const cplx lambda = gen.complex(-5, 5, -P.rho(), P.rho());
            for (const cplx v : phi_values(lambda, P, radii)) CHECK(std::abs(v) <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("radii handling") {
    const auto P = drtest::heis1();
    const std::vector<double> sorted{0.5, 1.0, 3.0};
    const std::vector<double> shuffled{3.0, -0.5, 1.0};
    const auto a = phi_values(0.7, P, sorted);
    const auto b = phi_values(0.7, P, shuffled);
    CHECK(b[0] == a[2]);
    CHECK(b[1] == a[0]);
    CHECK(b[2] == a[1]);
}

TEST_CASE("grid profiles from the ODE") {
    const auto P = drtest::quat();
    const auto g = RadialGrid::build(20.0, 256, P);
    const auto prof = phi_via_ode(cplx(1.0, 0.3), g);
    const auto direct = phi_values(cplx(1.0, 0.3), P, g->r());
    for (std::size_t i = 0; i < prof.size(); ++i) CHECK(prof.values[i] == direct[i]);
}

TEST_CASE("eigen-equation residual") {
    std::vector<double> radii;
    for (double r = 0.1; r <= 20.0; r *= 1.5) radii.push_back(r);
    for (const auto& P : {drtest::heis1(), drtest::quat()}) {
        for (cplx lambda : {cplx(0), cplx(0.5), cplx(2), cplx(1, 0.3), cplx(0, 0.5 * P.rho()), cplx(3, -1.2)}) {
            CHECK(eigen_residual(lambda, P, radii, 0.01) <= 1e-6);
        }
    }
    const std::vector<double> r{1.0, 2.0, 4.0};
    CHECK_THROWS_AS(eigen_residual(1.0, drtest::heis1(), r, 0.0), DomainError);
    const std::vector<double> too_small{0.01};
    CHECK_THROWS_AS(eigen_residual(1.0, drtest::heis1(), too_small, 0.01), DomainError);
}

TEST_CASE("exponential decay rates") {
    const auto P = drtest::heis1();
    const auto a = decay_rate(0.0, 1.5, P);
    CHECK(a.expected == doctest::Approx(-2.0 / 3.0));
    CHECK(std::abs(a.slope / a.expected - 1.0) < 0.05);
    const auto b = decay_rate(0.7, 1.2, P);
    CHECK(b.expected == doctest::Approx(-1.0 / 3.0));
    CHECK(std::abs(b.slope / b.expected - 1.0) < 0.05);
    const auto c = decay_rate(0.0, 1.0, P);
    CHECK(c.expected == 0.0);
    CHECK(std::abs(c.slope) < 1e-8);
    for (double p : {1.2, 1.5, 1.8}) {
        const auto q = decay_rate(0.4, p, drtest::quat());
        CHECK(std::abs(q.slope / q.expected - 1.0) < 0.05);
    }
    CHECK_THROWS_AS(decay_rate(0.0, 2.0, P), DomainError);
}

TEST_CASE("phi_0 carries the (1 + r) factor") {
    const auto P = drtest::heis1();
    std::vector<double> r;
    for (double x = 10.0; x <= 25.0; x += 0.25) r.push_back(x);
    const auto v = phi_values(0.0, P, r);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double y = std::log(v[i].real() * std::exp(r[i]) / (1 + r[i]));
        sx += r[i];
        sy += y;
        sxx += r[i] * r[i];
        sxy += r[i] * y;
    }
    const double n = static_cast<double>(r.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope) < 0.01);
}
