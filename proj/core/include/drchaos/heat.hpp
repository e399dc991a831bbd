#pragma once

#include <memory>
#include <span>
#include <vector>

#include "drchaos/nagroup.hpp"
#include "drchaos/radial.hpp"
#include "drchaos/spherical.hpp"

namespace drchaos {

/// Spectral samples: lambda nodes, quadrature weight times Plancherel density, transform values.
struct SpectralTable {
    std::vector<double> lambdas;
    std::vector<double> weights;
    std::vector<cplx> values;
};

/// T_t = e^{-t(Delta - c)} acting on radial profiles.
struct SemigroupConfig {
    double c = 0.0;
    double t = 0.0;
    DRSpaceParams params;
};

struct SpectralBasisOptions {
    double lambda_max = 10.0;
    /// Gauss-Legendre panel width in lambda. 16-point panels of width 0.25 keep the
    /// largest node gap below pi / (4 r_max) for r_max = 30.
    double panel_width = 0.25;
    int panel_points = 16;
    /// The basis fits with correction terms: the plain two-term fit leaves relative errors
    /// of order e^{-window_lo} in the Plancherel density.
    CFitOptions cfit{.correction_orders = 4};
    OdeOptions ode{};
};

/// phi_lambda sampled on a radial grid for every node of a composite
/// Gauss-Legendre rule on (0, lambda_max], with the fitted Plancherel density
/// at each node. Immutable and shareable across threads.
class SpectralBasis {
public:
    static std::shared_ptr<const SpectralBasis> build(GridPtr grid, const SpectralBasisOptions& opt = {});

    const GridPtr& grid() const noexcept { return grid_; }
    const DRSpaceParams& params() const noexcept { return grid_->params(); }
    std::size_t size() const noexcept { return lambdas_.size(); }
    double lambda_max() const noexcept { return lambda_max_; }
    double max_node_gap() const noexcept { return max_gap_; }

    std::span<const double> lambdas() const noexcept { return lambdas_; }
    std::span<const double> quad_weights() const noexcept { return qw_; }
    std::span<const double> plancherel() const noexcept { return plancherel_; }
    std::span<const double> fit_residuals() const noexcept { return fit_res_; }
    /// phi_{lambda_k}(r_j), row k.
    std::span<const double> phi_row(std::size_t k) const noexcept {
        return {phi_.data() + k * grid_->size(), grid_->size()};
    }

    /// hat f(lambda_k) = int_S f phi_{lambda_k}.
    std::vector<cplx> forward(const RadialProfile& f) const;
    /// C int_R F(lambda) phi_lambda |c(lambda)|^{-2} d lambda for an even F given at the nodes.
    RadialProfile synthesize(std::span<const cplx> transform, double C) const;
    /// Same integral with the absolute value of every term; a scale for rounding noise.
    std::vector<double> synthesis_scale(std::span<const cplx> transform, double C) const;

    SpectralTable table(std::span<const cplx> transform) const;

private:
    explicit SpectralBasis(GridPtr g) : grid_(std::move(g)) {}

    GridPtr grid_;
    double lambda_max_ = 0.0;
    double max_gap_ = 0.0;
    std::vector<double> lambdas_;
    std::vector<double> qw_;
    std::vector<double> plancherel_;
    std::vector<double> fit_res_;
    std::vector<double> phi_;
};

using BasisPtr = std::shared_ptr<const SpectralBasis>;

/// hat f(lambda) = int_S f phi_lambda for arbitrary lambdas (phi from the ODE).
/// Throws ContractError when the profile does not decay enough for the truncated
/// integral to converge (tail estimate above 1e-8 of the total).
SpectralTable spherical_transform_forward(const RadialProfile& f, std::span<const double> lambdas);

/// Heat kernel profile synthesized from hat h_t(lambda) = e^{-t(lambda^2 + rho^2)}.
struct HeatProfile {
    double t = 0.0;
    RadialProfile profile;
    /// Beyond this radius the synthesized values sit below the rounding floor of
    /// the spectral sum and are replaced by the tail
    /// h(R) (r/R)^kappa exp(-rho (r - R) - (r^2 - R^2) / 4t),
    /// with kappa fitted on the resolved stretch just before R.
    double resolved_radius = 0.0;
    double tail_power = 0.0;
    double max_imag = 0.0;
    double lambda_cutoff = 0.0;
};

/// Raw synthesis, no tail treatment: hat h_t weighted by the Plancherel density.
RadialProfile heat_profile_raw(double t, const SpectralBasis& basis, double C);

/// Requires t > 0 and e^{-t Lambda^2} < 1e-12 for the basis' lambda_max.
HeatProfile heat_profile(double t, const SpectralBasis& basis, double C);

struct InversionCalibration {
    double C = 0.0;
    double mass_half = 0.0;  ///< mass of h_{0.5} with this C
    double mass_two = 0.0;   ///< mass of h_2 with this C
    double spread = 0.0;     ///< max |mass - 1|
};

/// C such that the synthesized h_1 has unit mass. Throws ContractError when the
/// same C leaves h_{0.5} or h_2 more than 1e-2 away from unit mass.
InversionCalibration calibrate_inversion_constant(const SpectralBasis& basis);

/// Everything needed to run transforms on one space: grid, basis, inversion constant.
struct Pipeline {
    DRSpaceParams params;
    GridPtr grid;
    BasisPtr basis;
    InversionCalibration calibration;

    double C() const noexcept { return calibration.C; }
};

struct PipelineOptions {
    double r_max = 30.0;
    int n = 1024;
    SpectralBasisOptions basis{};
};

Pipeline build_pipeline(const DRSpaceParams& p, const PipelineOptions& opt = {});

/// T_t f = e^{ct} synthesis(e^{-t(lambda^2 + rho^2)} hat f).
RadialProfile apply_heat_semigroup(const RadialProfile& f, const SemigroupConfig& cfg, const Pipeline& pl);

struct HerzReport {
    double ratio = 0.0;           ///< ||T_t f||_{p,q} / ||f||_{p,q}
    double bound = 0.0;           ///< e^{(c - c_p) t}
    double hhat_boundary = 0.0;   ///< hat h_t(i gamma_p rho) by quadrature against h_t
    double hhat_expected = 0.0;   ///< e^{-t c_p}
    bool within_bound = false;    ///< ratio <= 1.05 bound
};

/// Requires 1 < p < infinity. q may be infinity.
HerzReport herz_bound_report(const RadialProfile& f, double p, double q, const SemigroupConfig& cfg,
                             const Pipeline& pl);

}  // namespace drchaos
