#include <doctest.h>

#include <cmath>
#include <sstream>

#include "drchaos/errors.hpp"
#include "drchaos/radial.hpp"
#include "support.hpp"

using namespace drchaos;
using drtest::Gen;

// Reference values from 30-digit evaluation of A(r) = 2^{m+l} sinh^{m+l}(r/2) cosh^l(r/2)
// and of its integral (mpmath quad).
TEST_CASE("volume density reference values") {
    const auto h = drtest::heis1();
    const auto q = drtest::quat();
    CHECK(volume_density(1.0, h) == doctest::Approx(1.2764580205594159).epsilon(1e-14));
    CHECK(volume_density(1.0, q) == doctest::Approx(1.9148082808175962).epsilon(1e-14));
    CHECK(volume_density(0.0, h) == 0.0);
    CHECK_THROWS_AS(log_volume_density(-1.0, h), DomainError);

    CHECK(ball_volume(2.0, h) == doctest::Approx(7.6297250358409804).epsilon(1e-12));
    CHECK(ball_volume(5.0, h) == doctest::Approx(5359.6965630020859).epsilon(1e-12));
    CHECK(ball_volume(2.0, q) == doctest::Approx(245.06131263995938).epsilon(1e-12));
}

TEST_CASE("log-derivative limits") {
    for (const auto& P : {drtest::heis1(), drtest::quat(), drtest::real_hyperbolic()}) {
        CHECK(density_log_derivative(60.0, P) == doctest::Approx(2.0 * P.rho()).epsilon(1e-12));
        const double r = 1e-6;
        CHECK(density_log_derivative(r, P) * r == doctest::Approx(P.m() + P.l()).epsilon(1e-9));
        // Against a central difference of log A.
        for (double x : {0.3, 1.0, 4.0, 12.0}) {
            const double hstep = 1e-5;
            const double fd = (log_volume_density(x + hstep, P) - log_volume_density(x - hstep, P)) / (2 * hstep);
            CHECK(density_log_derivative(x, P) == doctest::Approx(fd).epsilon(1e-8));
        }
    }
}

TEST_CASE("density is positive, grows, and log A - 2 rho r flattens") {
    for (const auto& P : {drtest::heis1(), drtest::quat()}) {
        double prev = 0.0;
        for (double r = 1.0; r <= 30.0; r += 0.5) {
            const double a = volume_density(r, P);
            CHECK(a > prev);
            prev = a;
        }
        // Slope of log A(r) - 2 rho r on [10, 20].
        const double s = (log_volume_density(20.0, P) - 2 * P.rho() * 20.0 - log_volume_density(10.0, P) +
                          2 * P.rho() * 10.0) / 10.0;
        CHECK(std::abs(s) < 1e-3);
    }
}

TEST_CASE("grid construction") {
    const auto P = drtest::heis1();
    const auto g = RadialGrid::build(10.0, 128, P);
    double wsum = 0.0;
    for (double w : g->w()) wsum += w;
    CHECK(wsum == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(g->r().front() > 0.0);
    for (std::size_t i = 1; i < g->size(); ++i) CHECK(g->r()[i] > g->r()[i - 1]);
    for (double d : g->dens()) CHECK(d > 0.0);
    CHECK(g->last_index_within(100.0) == g->size() - 1);
    CHECK_THROWS_AS(g->last_index_within(0.0), DomainError);

    CHECK_THROWS_AS(RadialGrid::build(0.0, 64, P), DomainError);
    CHECK_THROWS_AS(RadialGrid::build(-1.0, 64, P), DomainError);
    CHECK_THROWS_AS(RadialGrid::build(10.0, 8, P), DomainError);
    CHECK_THROWS_AS(RadialGrid::build(10.0, 100, P), DomainError);
}

TEST_CASE("grid refinement converges") {
    for (const auto& P : {drtest::heis1(), drtest::quat()}) {
        auto integral = [&](int n) {
            const auto g = RadialGrid::build(10.0, n, P);
            return radial_integral(RadialProfile::sample(g, [](double r) { return cplx(std::exp(-r * r)); })).real();
        };
        CHECK(std::abs(integral(64) - integral(128)) < 1e-8);
        CHECK(std::abs(integral(512) - integral(1024)) < 1e-8);
    }
}

TEST_CASE("grid integral against the ball volume") {
    const auto P = drtest::heis1();
    const auto g = RadialGrid::build(5.0, 256, P);
    const auto one = RadialProfile::sample(g, [](double) { return cplx(1.0); });
    CHECK(radial_integral(one).real() == doctest::Approx(ball_volume(5.0, P)).epsilon(1e-12));
}

TEST_CASE("radial_integral is linear") {
    const auto g = RadialGrid::build(10.0, 256, drtest::quat());
    Gen gen(5);
    for (int k = 0; k < 20; ++k) {
        const double a = gen.uniform(0.2, 2.0), b = gen.uniform(0.2, 2.0);
        const cplx s = gen.complex(-2, 2, -2, 2);
        const auto f = RadialProfile::sample(g, [&](double r) { return cplx(std::exp(-a * r * r)); });
        const auto h = RadialProfile::sample(g, [&](double r) { return cplx(0.0, std::exp(-b * r)); });
        std::vector<cplx> sum(g->size());
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = f.values[i] + s * h.values[i];
        const cplx lhs = radial_integral(RadialProfile(g, sum));
        const cplx rhs = radial_integral(f) + s * radial_integral(h);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
    CHECK(radial_integral(RadialProfile::zeros(g)) == cplx(0.0));
}

TEST_CASE("tabulated grids") {
    const auto P = drtest::heis1();
    std::vector<double> r;
    for (int i = 0; i <= 4000; ++i) r.push_back(5.0 * i / 4000);
    const auto g = RadialGrid::from_samples(r, P);
    const auto one = RadialProfile::sample(g, [](double) { return cplx(1.0); });
    CHECK(radial_integral(one).real() == doctest::Approx(ball_volume(5.0, P)).epsilon(1e-5));
    CHECK_THROWS_AS(RadialGrid::from_samples({1.0}, P), DomainError);
    CHECK_THROWS_AS(RadialGrid::from_samples({1.0, 1.0}, P), DomainError);
    CHECK_THROWS_AS(RadialGrid::from_samples({-1.0, 1.0}, P), DomainError);
}

TEST_CASE("profiles") {
    const auto g = RadialGrid::build(10.0, 64, drtest::heis1());
    const auto f = RadialProfile::sample(g, [](double r) { return cplx(std::exp(-r), r); });
    CHECK(f.sup_norm() == doctest::Approx(std::abs(f.values.back())));
    const auto t = f.truncated(5.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (g->r()[i] > 5.0) CHECK(t.values[i] == cplx(0.0));
        else CHECK(t.values[i] == f.values[i]);
    }
    CHECK_THROWS_AS(RadialProfile(g, std::vector<cplx>(3)), DomainError);

    std::ostringstream os;
    write_profile_csv(os, f);
    std::istringstream is(os.str());
    std::string header, line;
    std::getline(is, header);
    CHECK(header == "r,re,im");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 64);
}
