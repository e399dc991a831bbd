#pragma once

#include <complex>
#include <string>
#include <vector>

#include "drchaos/lorentz.hpp"
#include "drchaos/nagroup.hpp"

namespace drchaos {

enum class Tri { yes, no, unknown };

std::string to_string(Tri t);

struct SpectralConstants {
    double gamma_p;
    double c_p;     ///< 4 rho^2 / (p p'), with c_infinity = 0
    double vertex;  ///< rho^2 - (gamma_p rho)^2
};

/// p in [1, infinity].
SpectralConstants spectral_constants(double p, double rho);
inline SpectralConstants spectral_constants(double p, const DRSpaceParams& P) {
    return spectral_constants(p, P.rho());
}

/// Strip S_p = {|Im z| <= |gamma_p| rho} and its image P_p under z -> z^2 + rho^2.
class ParabolicRegion {
public:
    static ParabolicRegion make(double p, double rho);

    double p() const noexcept { return p_; }
    double rho() const noexcept { return rho_; }
    double half_width() const noexcept { return b_; }
    double vertex() const noexcept { return rho_ * rho_ - b_ * b_; }

    /// z = xi + i eta lies in P_p iff xi >= rho^2 - b^2 + eta^2 / (4 b^2) (b > 0), or
    /// eta = 0 and xi >= rho^2 (b = 0). `interior_only` makes the test strict.
    bool contains(std::complex<double> z, bool interior_only = false) const;
    bool strip_contains(std::complex<double> lambda, bool interior_only = false) const;

private:
    ParabolicRegion(double p, double rho, double b) : p_(p), rho_(rho), b_(b) {}
    double p_;
    double rho_;
    double b_;
};

inline bool region_contains(std::complex<double> z, const ParabolicRegion& region, bool interior_only) {
    return region.contains(z, interior_only);
}

/// Lambda(z) = z^2 + rho^2.
inline std::complex<double> laplace_eigenvalue(std::complex<double> lambda, double rho) {
    return lambda * lambda + rho * rho;
}

struct OmegaGamma {
    bool in_omega = false;          ///< z in (P_p interior - c) and Im z > 0
    std::complex<double> gamma;     ///< principal sqrt(z - rho^2 + c)
    double r_of_z = 0.0;            ///< 2 rho / (Im gamma + rho)
    bool gamma_in_strip_interior = false;
    double roundtrip_error = 0.0;   ///< |Lambda(gamma) - c - z|
};

OmegaGamma omega_and_gamma(std::complex<double> z, double p, double c, double rho);

struct ChaosVerdict {
    Tri hypercyclic = Tri::unknown;
    Tri chaotic = Tri::unknown;
    Tri subspace_chaotic = Tri::unknown;
    Tri periodic_points = Tri::unknown;
    /// One entry per flag, in the order above.
    std::vector<std::string> citations;
    std::vector<std::string> notes;

    /// chaotic = yes implies hypercyclic = yes, periodic = yes and subspace = yes.
    bool coherent() const;
};

/// Decision table for T_t = e^{-t(Delta - c)} on L^{p,q}. Exact comparisons with
/// c_p decide the boundary cells; pass c_p itself (from spectral_constants) to probe them.
/// Throws DomainError for p = 1 with q != 1 and for p = infinity with q < infinity.
ChaosVerdict classify_dynamics(const LorentzIndex& idx, double c, double rho);
ChaosVerdict classify_dynamics(double p, double q, double c, double rho);

/// Point spectrum of Delta on L^{p,q} for radial eigenfunctions phi_lambda: which lambda give
/// phi_lambda in the space. Encodes membership facts (a)-(f) for spherical functions.
enum class StripRule { closed_strip, open_strip, nonzero_real, empty };

struct PointSpectrumEntry {
    StripRule rule;
    double strip_half_width;  ///< |gamma| rho of the strip in question
    std::string citation;
};

/// Membership rule for phi_lambda in L^{p,q}; p in (1, infinity], q in [1, infinity].
PointSpectrumEntry spherical_membership_rule(double p, double q, double rho);
/// Applies the rule to a given lambda.
Tri spherical_membership(std::complex<double> lambda, double p, double q, double rho);

}  // namespace drchaos
