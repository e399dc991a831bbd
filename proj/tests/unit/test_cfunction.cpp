#include <doctest.h>

#include <cmath>

#include "drchaos/errors.hpp"
#include "drchaos/spherical.hpp"
#include "support.hpp"

using namespace drchaos;

namespace {

// c(lambda) = c_J(2 lambda) with the Jacobi c-function
//   c_J(mu) = 2^{Q - i mu} Gamma(a + 1) Gamma(i mu) / (Gamma((i mu + Q)/2) Gamma((i mu + a - b + 1)/2)),
// a = (m + l - 1)/2, b = (l - 1)/2, evaluated with mpmath.
struct CRef {
    double lambda;
    double re, im;
};

const CRef kHeis1[] = {
    {0.5, -1.4832126662828213, -2.6724739783804325},
    {1.0, -0.68462105468406004, -0.89430812153471369},
    {2.0, -0.26370970786900962, -0.29935100303132372},
    {5.0, -0.06955564123388247, -0.073129536648499747},
};

const CRef kQuat[] = {
    {0.5, -99.444867146649668, -18.60189843389597},
    {1.0, -20.166539806346269, 13.158828980344563},
    {2.0, -1.012917895586243, 3.459327507347029},
    {5.0, 0.057745126218552108, 0.17445823537600087},
};

CFitOptions with_corrections(int k) {
    CFitOptions o;
    o.correction_orders = k;
    return o;
}

}  // namespace

TEST_CASE("corrected fit reproduces the closed-form c-function") {
    for (const auto& ref : kHeis1) {
        const auto fit = fit_cfunction_at(ref.lambda, drtest::heis1(), with_corrections(4));
        CHECK(drtest::rel(fit.c_plus, {ref.re, ref.im}) < 1e-8);
    }
    for (const auto& ref : kQuat) {
        const auto fit = fit_cfunction_at(ref.lambda, drtest::quat(), with_corrections(4));
        CHECK(drtest::rel(fit.c_plus, {ref.re, ref.im}) < 1e-8);
    }
}

TEST_CASE("plain two-exponential fit") {
    for (const auto& ref : kHeis1) {
        const auto fit = fit_cfunction_at(ref.lambda, drtest::heis1());
        CHECK(drtest::rel(fit.c_plus, {ref.re, ref.im}) < 1e-3);
        // phi is real for real lambda, so the two coefficients are conjugate.
        CHECK(drtest::rel(fit.c_minus, std::conj(fit.c_plus)) < 1e-6);
    }
}

TEST_CASE("l = 0: c(lambda) = 1 / (2 i lambda)") {
    const auto P = drtest::real_hyperbolic();
    for (double lambda : {0.5, 1.0, 3.0}) {
        const cplx exact = 1.0 / (cplx(0, 2) * lambda);
        CHECK(drtest::rel(fit_cfunction_at(lambda, P, with_corrections(4)).c_plus, exact) < 1e-9);
    }
}

TEST_CASE("window behaviour") {
    const auto P = drtest::heis1();
    CFitOptions early, late;
    early.window_lo = 10.0;
    early.window_hi = 17.0;
    late.window_lo = 15.0;
    late.window_hi = 22.0;
    for (double lambda : {0.5, 2.0, 4.0}) {
        CHECK(fit_cfunction_at(lambda, P, late).residual < fit_cfunction_at(lambda, P, early).residual);
    }
    CFitOptions a, b;
    a.window_lo = 10.0;
    a.window_hi = 25.0;
    b.window_lo = 15.0;
    b.window_hi = 30.0;
    const double ca = std::abs(fit_cfunction_at(2.0, P, a).c_plus);
    const double cb = std::abs(fit_cfunction_at(2.0, P, b).c_plus);
    CHECK(std::abs(ca - cb) / ca < 1e-4);
}

TEST_CASE("tables and the Plancherel density") {
    const auto P = drtest::heis1();
    std::vector<double> lambdas;
    for (int i = 10; i <= 100; ++i) lambdas.push_back(i / 20.0);
    lambdas.push_back(-1.0);  // folded onto 1.0, deduplicated
    const auto table = fit_cfunction(lambdas, P, with_corrections(4));
    CHECK(table.lambdas.size() == lambdas.size() - 1);
    for (std::size_t i = 1; i < table.lambdas.size(); ++i) CHECK(table.lambdas[i] > table.lambdas[i - 1]);

    for (double l : {0.73, 1.0, 2.0, 4.41}) {
        const double d = plancherel_density(l, table);
        CHECK(d > 0.0);
        CHECK(plancherel_density(-l, table) == d);
    }
    // |c(lambda)|^{-2} at lambda = 1, 2 from the closed form.
    CHECK(plancherel_density(1.0, table) == doctest::Approx(0.78833702373429059).epsilon(1e-8));
    CHECK(plancherel_density(2.0, table) == doctest::Approx(6.2832291305689209).epsilon(1e-8));
    // Between nodes the cubic interpolant is still close.
    const cplx c = fit_cfunction_at(1.525, P, with_corrections(4)).c_plus;
    CHECK(plancherel_density(1.525, table) == doctest::Approx(1.0 / std::norm(c)).epsilon(1e-5));

    CHECK_THROWS_AS(plancherel_density(6.0, table), DomainError);
    CHECK_THROWS_AS(plancherel_density(0.2, table), DomainError);
    const std::vector<double> too_small{0.05, 1.0};
    CHECK_THROWS_AS(fit_cfunction(too_small, P), DomainError);
    CHECK_THROWS_AS(fit_cfunction_at(0.0, P), DomainError);
}
