#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace drchaos {

/// Dimensions of a Damek-Ricci space S = NA built over an H-type algebra v + z.
///
/// m = dim v (even, >= 2), l = dim z (>= 0). Everything else is derived:
/// homogeneous dimension Q = m/2 + l, rho = Q/2 and the manifold dimension
/// m + l + 1. Construct through from_dims(), which validates.
class DRSpaceParams {
public:
    static DRSpaceParams from_dims(int m, int l);

    int m() const noexcept { return m_; }
    int l() const noexcept { return l_; }
    double Q() const noexcept { return 0.5 * m_ + l_; }
    double rho() const noexcept { return 0.5 * Q(); }
    int dim() const noexcept { return m_ + l_ + 1; }

    friend bool operator==(const DRSpaceParams&, const DRSpaceParams&) = default;

private:
    DRSpaceParams(int m, int l) : m_(m), l_(l) {}
    int m_;
    int l_;
};

/// An H-type algebra: the Clifford generators J_1..J_l acting on v.
/// The bracket is <[X, X'], e_i> = <J_i X, X'>.
struct HTypeStructure {
    DRSpaceParams params;
    std::vector<Eigen::MatrixXd> J;

    /// [X, X'] as an l-vector.
    Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& xp) const;
    /// J_Z = sum_i Z_i J_i.
    Eigen::MatrixXd j_of(const Eigen::VectorXd& z) const;
};

enum class HTypeKind { heisenberg, quaternionic, custom };

/// Builtin constructions: heisenberg(k) gives m = 2k, l = 1 with the standard
/// symplectic matrix; quaternionic gives m = 4, l = 3 from left multiplication by
/// i, j, k. custom validates the user matrices (skewness and anticommutation,
/// tolerance 1e-12) and throws DomainError otherwise.
HTypeStructure build_heisenberg(int k);
HTypeStructure build_quaternionic();
HTypeStructure build_custom(std::vector<Eigen::MatrixXd> J);

/// Point (X, Y, a_t) of S = NA; A(x) = t.
struct GroupElement {
    Eigen::VectorXd X;
    Eigen::VectorXd Y;
    double t = 0.0;

    static GroupElement identity(const DRSpaceParams& p);
};

GroupElement s_multiply(const GroupElement& g1, const GroupElement& g2, const HTypeStructure& H);
GroupElement s_inverse(const GroupElement& g, const HTypeStructure& H);

/// delta_s(X, Y) = (e^{s/2} X, e^s Y).
GroupElement dilate(const GroupElement& n, double s);

/// Max-norm difference between delta_s(n) by the scaling formula and by the
/// conjugation a_s n a_{-s}. Requires n.t == 0.
double dilation_check(const GroupElement& n, double s, const HTypeStructure& H);

/// Logarithm of the left Haar density in (n, t) coordinates: -Q t.
double haar_log_weight(const GroupElement& g, const DRSpaceParams& p);

/// Largest violation of the H-type identities over the generators:
/// skewness, J_i J_j + J_j J_i + 2 delta_ij I.
double htype_defect(const std::vector<Eigen::MatrixXd>& J);

}  // namespace drchaos
