#include <doctest.h>

#include <cmath>

#include "drchaos/errors.hpp"
#include "drchaos/nagroup.hpp"
#include "support.hpp"

using namespace drchaos;
using drtest::Gen;

namespace {

double max_diff(const GroupElement& a, const GroupElement& b) {
    double d = std::abs(a.t - b.t);
    if (a.X.size()) d = std::max(d, (a.X - b.X).cwiseAbs().maxCoeff());
    if (a.Y.size()) d = std::max(d, (a.Y - b.Y).cwiseAbs().maxCoeff());
    return d;
}

std::vector<HTypeStructure> structures() {
    return {build_heisenberg(1), build_heisenberg(3), build_quaternionic()};
}

}  // namespace

TEST_CASE("space dimensions") {
    const auto h = build_heisenberg(1).params;
    CHECK(h.m() == 2);
    CHECK(h.l() == 1);
    CHECK(h.Q() == 2.0);
    CHECK(h.rho() == 1.0);
    CHECK(h.dim() == 4);

    const auto q = build_quaternionic().params;
    CHECK(q.m() == 4);
    CHECK(q.l() == 3);
    CHECK(q.Q() == 5.0);
    CHECK(q.rho() == 2.5);

    const auto h4 = build_heisenberg(4).params;
    CHECK(h4.m() == 8);
    CHECK(h4.Q() == 5.0);

    CHECK_THROWS_AS(DRSpaceParams::from_dims(3, 1), DomainError);
    CHECK_THROWS_AS(DRSpaceParams::from_dims(0, 1), DomainError);
    CHECK_THROWS_AS(DRSpaceParams::from_dims(2, -1), DomainError);
    CHECK_THROWS_AS(build_heisenberg(0), DomainError);
}

TEST_CASE("builtin generators satisfy the H-type identities") {
    Gen gen(11);
    for (const auto& H : structures()) {
        CHECK(htype_defect(H.J) < 1e-15);
        for (int k = 0; k < 50; ++k) {
            const auto X = gen.vector(H.params.m());
            const auto Z = gen.vector(H.params.l());
            const Eigen::MatrixXd JZ = H.j_of(Z);
            CHECK((JZ * JZ * X + Z.squaredNorm() * X).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs((JZ * X).norm() - Z.norm() * X.norm()) < 1e-12);
        }
    }
}

TEST_CASE("custom generators are validated") {
    Eigen::MatrixXd J(2, 2);
    J << 0, -1, 1, 0;
    CHECK_NOTHROW(build_custom({J}));

    Eigen::MatrixXd not_skew(2, 2);
    not_skew << 0, -1, 2, 0;
    CHECK_THROWS_AS(build_custom({not_skew}), DomainError);

    // Two copies of the same J do not anticommute.
    CHECK_THROWS_AS(build_custom({J, J}), DomainError);
    CHECK_THROWS_AS(build_custom({}), DomainError);

    Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(3, 3);
    CHECK_THROWS_AS(build_custom({odd}), DomainError);

    // Slightly perturbed beyond 1e-12 is rejected.
    Eigen::MatrixXd nudged = J;
    nudged(0, 1) -= 1e-9;
    CHECK_THROWS_AS(build_custom({nudged}), DomainError);
}

TEST_CASE("group law examples") {
    const auto H = build_heisenberg(1);
    const auto& P = H.params;
    Gen gen(1);
    const auto g = gen.element(P);
    CHECK(max_diff(s_multiply(GroupElement::identity(P), g, H), g) == 0.0);

    // [X, X] = 0
    GroupElement x{gen.vector(2), Eigen::VectorXd::Zero(1), 0.0};
    const auto xx = s_multiply(x, x, H);
    CHECK(max_diff(xx, {2.0 * x.X, Eigen::VectorXd::Zero(1), 0.0}) < 1e-15);

    // (e1, 0, 0)(e2, 0, 0): Y = <J e1, e2> / 2 with J the symplectic matrix, J e1 = e2.
    GroupElement e1{Eigen::Vector2d(1, 0), Eigen::VectorXd::Zero(1), 0.0};
    GroupElement e2{Eigen::Vector2d(0, 1), Eigen::VectorXd::Zero(1), 0.0};
    const auto prod = s_multiply(e1, e2, H);
    CHECK(prod.X[0] == 1.0);
    CHECK(prod.X[1] == 1.0);
    CHECK(prod.Y[0] == doctest::Approx(0.5));
    CHECK(prod.t == 0.0);
    CHECK(s_multiply(e2, e1, H).Y[0] == doctest::Approx(-0.5));

    // Central elements invert by negation.
    GroupElement z{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Constant(1, 3.0), 0.0};
    CHECK(s_inverse(z, H).Y[0] == -3.0);
    CHECK(max_diff(s_inverse(GroupElement::identity(P), H), GroupElement::identity(P)) == 0.0);

    GroupElement wrong{Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(1), 0.0};
    CHECK_THROWS_AS(s_multiply(wrong, g, H), DomainError);
}

TEST_CASE("group axioms on random samples") {
    Gen gen(2024);
    for (const auto& H : structures()) {
        const auto& P = H.params;
        for (int k = 0; k < 200; ++k) {
            const auto a = gen.element(P), b = gen.element(P), c = gen.element(P);
            const auto left = s_multiply(s_multiply(a, b, H), c, H);
            const auto right = s_multiply(a, s_multiply(b, c, H), H);
            CHECK(max_diff(left, right) < 1e-10);
            CHECK(max_diff(s_multiply(a, s_inverse(a, H), H), GroupElement::identity(P)) < 1e-12);
            CHECK(max_diff(s_multiply(s_inverse(a, H), a, H), GroupElement::identity(P)) < 1e-12);
            // A(g1 g2) = A(g1) + A(g2) exactly.
            CHECK(s_multiply(a, b, H).t == a.t + b.t);
        }
    }
}

TEST_CASE("dilations agree with conjugation by a_s") {
    Gen gen(7);
    for (const auto& H : structures()) {
        const auto& P = H.params;
        CHECK(dilation_check(GroupElement::identity(P), 1.0, H) == 0.0);
        for (int k = 0; k < 100; ++k) {
            auto n = gen.element(P);
            n.t = 0.0;
            CHECK(dilation_check(n, 0.0, H) < 1e-15);
            CHECK(dilation_check(n, gen.uniform(-3.0, 3.0), H) < 1e-12);
        }
        auto n = gen.element(P);
        n.t = 0.5;
        CHECK_THROWS_AS(dilation_check(n, 1.0, H), DomainError);
    }
    auto n = gen.element(build_heisenberg(1).params);
    n.t = 0.0;
    CHECK(dilation_check(n, 1.3, build_heisenberg(1)) < 1e-12);
}

TEST_CASE("Haar weight") {
    const auto h = build_heisenberg(1).params;
    const auto q = build_quaternionic().params;
    auto g = GroupElement::identity(h);
    CHECK(haar_log_weight(g, h) == 0.0);
    g.t = 1.0;
    CHECK(haar_log_weight(g, h) == -2.0);
    auto gq = GroupElement::identity(q);
    gq.t = -2.0;
    CHECK(haar_log_weight(gq, q) == 10.0);
}
