#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drchaos/heat.hpp"
#include "drchaos/lorentz.hpp"
#include "drchaos/spectrum.hpp"

namespace drchaos {

/// Relative error |int phi_lambda h_t - e^{-t(lambda^2 + rho^2)}| / |e^{-t(lambda^2 + rho^2)}|.
/// Requires |Im lambda| <= rho.
double eigen_pairing_check(cplx lambda, double t, const Pipeline& pl);

struct EigenTerm {
    cplx a;
    cplx lambda;
    cplx z;  ///< lambda^2 + rho^2 - c
};

/// g = sum_k a_k phi_{lambda_k}; T_t g = sum_k a_k e^{-t z_k} phi_{lambda_k}.
class EigenCombination {
public:
    EigenCombination(SemigroupConfig cfg) : cfg_(cfg) {}

    EigenCombination& add(cplx a, cplx lambda);
    /// Adds the term whose T_t-eigenvalue is e^{-t z}: lambda = Gamma(z) = sqrt(z - rho^2 + c).
    EigenCombination& add_with_exponent(cplx a, cplx z);

    const std::vector<EigenTerm>& terms() const noexcept { return terms_; }
    const SemigroupConfig& config() const noexcept { return cfg_; }

private:
    SemigroupConfig cfg_;
    std::vector<EigenTerm> terms_;
};

struct OrbitSample {
    double t;
    double sup_norm;
    std::vector<double> lorentz;  ///< one entry per requested index
};

struct OrbitResult {
    std::vector<OrbitSample> samples;
    double max_eigen_residual = 0.0;
    std::vector<RadialProfile> snapshots;  ///< only when requested
};

/// Evaluates T_t g on the grid at each time. Every phi_{lambda_k} is first certified
/// by eigen_residual <= 1e-6 (ContractError otherwise).
OrbitResult orbit_series(const EigenCombination& combo, std::span<const double> times,
                         std::span<const LorentzIndex> norms, const GridPtr& grid,
                         bool keep_snapshots = false);

/// Profile of T_t g at a single time.
RadialProfile orbit_profile(const EigenCombination& combo, double t, const GridPtr& grid);

struct PeriodicWitness {
    cplx lambda;
    cplx z;                        ///< T_t phi = e^{-tz} phi
    std::optional<double> period;  ///< empty for fixed points (every t)
    double eigen_residual = 0.0;
    Membership membership = Membership::inconclusive;
    double orbit_return_error = 0.0;
};

struct PeriodicReport {
    Tri exists = Tri::unknown;
    std::string citation;
    std::optional<PeriodicWitness> witness;
};

/// Consults classify_dynamics and, when periodic points exist, builds and certifies
/// a radial witness phi_lambda.
PeriodicReport periodic_point_check(double p, double q, double c, const DRSpaceParams& P,
                                    const GridPtr& grid);

/// hat h(lambda) for h = e^{ct} h_{t+t'} - h_{t'}.
cplx wtt_hhat(cplx lambda, double c, double t, double t_prime, double rho);

struct WttReport {
    double c = 0.0, t = 0.0, t_prime = 0.0, p = 0.0, rho = 0.0, c_p = 0.0;
    double strip_half_width = 0.0;  ///< |gamma_p| rho + eps
    double eps = 0.0;
    bool c_below_cp = false;
    // c < c_p
    double min_abs_hhat = 0.0;
    double min_abs_factor = 0.0;  ///< min |e^{-t(lambda^2 + rho^2 - c)} - 1| on the grid
    bool nonvanishing = false;    ///< hypothesis (iii)
    bool decays = false;          ///< hypothesis (ii): |hat h| small and shrinking at the grid edge
    double edge_abs_hhat = 0.0;
    std::string analyticity = "structural: entire in lambda (closed form)";
    std::string growth_condition = "structurally satisfied by Gaussian decay; not certified numerically";
    // c >= c_p
    std::vector<cplx> zeros;          ///< zeros of hat h found inside the closed strip
    std::vector<double> zero_residuals;
};

/// Requires p in (2, infinity), t, t' > 0. For c < c_p the grid covers
/// |Re lambda| <= re_max and |Im lambda| <= |gamma_p| rho + eps; for c >= c_p the zeros
/// of hat h inside the closed strip are located by Newton iteration.
WttReport wtt_window_check(double c, double t, double t_prime, double p, const DRSpaceParams& P,
                           double re_max = 10.0, int n_re = 401, int n_im = 41);

}  // namespace drchaos
