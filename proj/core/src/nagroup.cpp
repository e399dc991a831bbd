#include "drchaos/nagroup.hpp"

#include <cmath>
#include <sstream>

#include "drchaos/errors.hpp"

namespace drchaos {

namespace {

constexpr double kHTypeTol = 1e-12;

void require_dims(const GroupElement& g, const DRSpaceParams& p, const char* what) {
    if (g.X.size() != p.m() || g.Y.size() != p.l()) {
        std::ostringstream os;
        os << what << ": element has dims (" << g.X.size() << ", " << g.Y.size() << "), space has (" << p.m()
           << ", " << p.l() << ")";
        throw DomainError(os.str());
    }
}

}  // namespace

DRSpaceParams DRSpaceParams::from_dims(int m, int l) {
    if (m < 2 || m % 2 != 0) throw DomainError("dim v must be even and >= 2, got " + std::to_string(m));
    if (l < 0) throw DomainError("dim z must be >= 0, got " + std::to_string(l));
    return DRSpaceParams(m, l);
}

Eigen::VectorXd HTypeStructure::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& xp) const {
    Eigen::VectorXd out(params.l());
    for (int i = 0; i < params.l(); ++i) out[i] = (J[i] * x).dot(xp);
    return out;
}

Eigen::MatrixXd HTypeStructure::j_of(const Eigen::VectorXd& z) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(params.m(), params.m());
    for (int i = 0; i < params.l(); ++i) out += z[i] * J[i];
    return out;
}

double htype_defect(const std::vector<Eigen::MatrixXd>& J) {
    double worst = 0.0;
    for (std::size_t i = 0; i < J.size(); ++i) {
        worst = std::max(worst, (J[i] + J[i].transpose()).cwiseAbs().maxCoeff());
        for (std::size_t j = i; j < J.size(); ++j) {
            Eigen::MatrixXd ac = J[i] * J[j] + J[j] * J[i];
            if (i == j) ac += 2.0 * Eigen::MatrixXd::Identity(J[i].rows(), J[i].cols());
            worst = std::max(worst, ac.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

HTypeStructure build_heisenberg(int k) {
    if (k < 1) throw DomainError("heisenberg(k) needs k >= 1");
    const int m = 2 * k;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    J.topRightCorner(k, k) = -Eigen::MatrixXd::Identity(k, k);
    J.bottomLeftCorner(k, k) = Eigen::MatrixXd::Identity(k, k);
    return {DRSpaceParams::from_dims(m, 1), {J}};
}

HTypeStructure build_quaternionic() {
    // Left multiplication by i, j, k on H = span(1, i, j, k).
    Eigen::Matrix4d Li, Lj, Lk;
    // clang-format off
    Li << 0, -1,  0,  0,
          1,  0,  0,  0,
          0,  0,  0, -1,
          0,  0,  1,  0;
    Lj << 0,  0, -1,  0,
          0,  0,  0,  1,
          1,  0,  0,  0,
          0, -1,  0,  0;
    Lk << 0,  0,  0, -1,
          0,  0, -1,  0,
          0,  1,  0,  0,
          1,  0,  0,  0;
    // clang-format on
    return {DRSpaceParams::from_dims(4, 3), {Li, Lj, Lk}};
}

HTypeStructure build_custom(std::vector<Eigen::MatrixXd> J) {
    if (J.empty()) throw DomainError("custom H-type structure needs at least one generator");
    const auto m = J.front().rows();
    for (const auto& Ji : J) {
        if (Ji.rows() != m || Ji.cols() != m) throw DomainError("custom generators must be square and equal size");
    }
    auto params = DRSpaceParams::from_dims(static_cast<int>(m), static_cast<int>(J.size()));
    const double defect = htype_defect(J);
    if (!(defect <= kHTypeTol)) {
        std::ostringstream os;
        os << "custom generators violate skewness / Clifford relations (defect " << defect << ")";
        throw DomainError(os.str());
    }
    return {params, std::move(J)};
}

GroupElement GroupElement::identity(const DRSpaceParams& p) {
    return {Eigen::VectorXd::Zero(p.m()), Eigen::VectorXd::Zero(p.l()), 0.0};
}

GroupElement s_multiply(const GroupElement& g1, const GroupElement& g2, const HTypeStructure& H) {
    require_dims(g1, H.params, "s_multiply");
    require_dims(g2, H.params, "s_multiply");
    const double half = std::exp(0.5 * g1.t);
    const double full = half * half;
    GroupElement out;
    out.X = g1.X + half * g2.X;
    out.Y = g1.Y + full * g2.Y + (0.5 * half) * H.bracket(g1.X, g2.X);
    out.t = g1.t + g2.t;
    return out;
}

GroupElement s_inverse(const GroupElement& g, const HTypeStructure& H) {
    require_dims(g, H.params, "s_inverse");
    // [X, X] = 0 removes the bracket term.
    return {-std::exp(-0.5 * g.t) * g.X, -std::exp(-g.t) * g.Y, -g.t};
}

GroupElement dilate(const GroupElement& n, double s) {
    return {std::exp(0.5 * s) * n.X, std::exp(s) * n.Y, n.t};
}

double dilation_check(const GroupElement& n, double s, const HTypeStructure& H) {
    require_dims(n, H.params, "dilation_check");
    if (n.t != 0.0) throw DomainError("dilation_check needs an element of N (t = 0)");
    const DRSpaceParams& p = H.params;
    GroupElement a_s = GroupElement::identity(p);
    a_s.t = s;
    GroupElement a_minus = GroupElement::identity(p);
    a_minus.t = -s;
    const GroupElement conj = s_multiply(s_multiply(a_s, n, H), a_minus, H);
    const GroupElement scaled = dilate(n, s);
    double res = std::abs(conj.t - scaled.t);
    if (p.m() > 0) res = std::max(res, (conj.X - scaled.X).cwiseAbs().maxCoeff());
    if (p.l() > 0) res = std::max(res, (conj.Y - scaled.Y).cwiseAbs().maxCoeff());
    return res;
}

double haar_log_weight(const GroupElement& g, const DRSpaceParams& p) { return -p.Q() * g.t; }

}  // namespace drchaos
