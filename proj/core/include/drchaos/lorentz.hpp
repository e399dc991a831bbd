#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "drchaos/radial.hpp"

namespace drchaos {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Exponents of L^{p,q}. p, q in [1, infinity]; p = 1 forces q = 1 and
/// p = infinity forces q = infinity.
class LorentzIndex {
public:
    static LorentzIndex make(double p, double q);

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    /// p / (p - 1), with 1' = infinity and infinity' = 1.
    double p_prime() const noexcept;
    /// 2/p - 1.
    double gamma_p() const noexcept;

private:
    LorentzIndex(double p, double q) : p_(p), q_(q) {}
    double p_;
    double q_;
};

/// Measure of {|f| > alpha} on the grid (radially truncated at the grid's r_max).
double distribution_function(const RadialProfile& f, double alpha);

/// Lorentz quasi-norm
///   (q int_0^inf (alpha d_f(alpha)^{1/p})^q dalpha/alpha)^{1/q},  q < infinity
///   sup_alpha alpha d_f(alpha)^{1/p},                            q = infinity
/// evaluated exactly for the grid measure: d_f is a step function whose jumps sit at
/// the sampled values, so the integral reduces to a finite sum over the sorted values.
double lorentz_norm(const RadialProfile& f, const LorentzIndex& idx);

/// (int |f|^p)^{1/p} by direct quadrature; p = infinity gives the sup norm.
double lp_norm(const RadialProfile& f, double p);

enum class Membership { finite, divergent, inconclusive };

std::string to_string(Membership m);

struct MembershipResult {
    Membership verdict = Membership::inconclusive;
    double growth_exponent = 0.0;  ///< slope of log(norm) against log(r_max)
    std::vector<double> radii;
    std::vector<double> norms;
};

/// Classifies a truncated-norm sequence. Slope > 0.05 is divergent, slope < 0.005
/// finite, anything between inconclusive.
MembershipResult classify_growth(std::span<const double> radii, std::span<const double> norms);

/// Default truncation radii for membership_diagnostic.
std::vector<double> default_membership_radii();

/// Truncated quasi-norms of phi_lambda on a grid at each radius, then classify_growth.
MembershipResult membership_diagnostic(cplx lambda, const LorentzIndex& idx, const GridPtr& grid,
                                       std::span<const double> radii);

/// Same, for an already computed profile.
MembershipResult membership_diagnostic(const RadialProfile& f, const LorentzIndex& idx,
                                       std::span<const double> radii);

}  // namespace drchaos
