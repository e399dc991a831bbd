#pragma once

#include <span>
#include <vector>

#include "drchaos/nagroup.hpp"
#include "drchaos/radial.hpp"
#include "drchaos/radial_ode.hpp"

namespace drchaos {

/// lambda together with the Laplace eigenvalue lambda^2 + rho^2.
struct SpectralPoint {
    cplx lambda;
    cplx eigenvalue;

    static SpectralPoint at(cplx lambda, const DRSpaceParams& p) {
        return {lambda, lambda * lambda + p.rho() * p.rho()};
    }
};

/// Area of the unit sphere in R^k, 2 pi^{k/2} / Gamma(k/2). k >= 1.
double unit_sphere_area(int k);

/// Poisson kernel p_{a_t}(V, Z) = C a_t^Q ((a_t + u^2/4)^2 + v^2)^{-Q}, u = |V|, v = |Z|.
double poisson_kernel(double t, double u, double v, const DRSpaceParams& p, double c_norm);

/// The constant C that makes the Poisson kernel at a_0 a probability density on N.
/// Computed by nested adaptive Gauss-Kronrod quadrature on the compactified (u, v) box.
double normalize_poisson(const DRSpaceParams& p, double rel_tol = 1e-12);

struct IntegralOptions {
    double rel_tol = 1e-10;
    /// Distance kept from |Im lambda| = rho.
    double guard = 0.05;
};

/// phi_lambda(a_t) from its definition as an integral over N of complex powers of
/// the Poisson kernel. |Im lambda| must not exceed rho (1 - guard); otherwise a
/// DomainError points callers at phi_via_ode.
cplx phi_via_integral(cplx lambda, double t, const DRSpaceParams& p, const IntegralOptions& opt = {});

/// phi_lambda on a radial grid from the radial eigen-equation. Valid for all complex lambda.
RadialProfile phi_via_ode(cplx lambda, const GridPtr& grid, const OdeOptions& opt = {});

/// phi_lambda(a_r) at arbitrary sorted radii.
std::vector<cplx> phi_values(cplx lambda, const DRSpaceParams& p, std::span<const double> radii,
                             const OdeOptions& opt = {});

/// Largest relative residual of u'' + D u' + (lambda^2 + rho^2) u, with u from the
/// ODE evaluator and derivatives from fourth-order central differences (step h),
/// sampled at `radii`. The residual is normalised by |u''| + |D u'| + |E u|.
double eigen_residual(cplx lambda, const DRSpaceParams& p, std::span<const double> radii,
                      double h = 1e-2, const OdeOptions& opt = {});

struct DecayFit {
    double slope;
    double expected;  ///< -2 rho / p'
};

/// Least-squares slope of log|phi_lambda(a_r)| over r in [r_lo, r_hi] for
/// lambda = alpha + i gamma_p rho. Requires 0 < p < 2.
DecayFit decay_rate(double alpha, double p, const DRSpaceParams& params, double r_lo = 8.0,
                    double r_hi = 20.0);

/// Harish-Chandra c-function samples from asymptotic fitting of phi_lambda(a_t) e^{rho t}
/// against {e^{i lambda t}, e^{-i lambda t}}.
struct CFunctionTable {
    DRSpaceParams params;
    std::vector<double> lambdas;           ///< ascending, positive
    std::vector<cplx> c_values;            ///< c(lambda)
    std::vector<cplx> c_minus_values;      ///< fitted c(-lambda), expected conj(c(lambda))
    std::vector<double> fit_residuals;     ///< RMS fit residual relative to |c(lambda)|
    double window_lo = 10.0;
    double window_hi = 25.0;
};

struct CFitOptions {
    double window_lo = 10.0;
    double window_hi = 25.0;
    int samples = 241;
    /// Smallest admissible |lambda|; the c-function has a pole at 0.
    double min_lambda = 0.1;
    /// Extra basis pairs e^{(+-i lambda - k) t}, k = 1..orders, absorbing the subdominant
    /// terms of the expansion. 0 gives the plain two-exponential fit.
    int correction_orders = 0;
    OdeOptions ode{};
};

struct CFitResult {
    cplx c_plus;
    cplx c_minus;
    double residual;  ///< RMS residual / |c_plus|
    /// Largest |phi e^{rho t} - c+ e^{i lambda t} - c- e^{-i lambda t}| / |c_plus| on the
    /// window, i.e. the part of the samples the leading pair leaves unexplained.
    double leading_defect = 0.0;
};

/// Single-lambda fit. `min_lambda` is not enforced here; callers that build full
/// spectral grids use this down to very small lambda.
CFitResult fit_cfunction_at(double lambda, const DRSpaceParams& p, const CFitOptions& opt = {});

/// Fits every lambda (|lambda| >= opt.min_lambda). Negative entries are folded onto
/// their absolute value; the table is sorted and deduplicated.
CFunctionTable fit_cfunction(std::span<const double> lambdas, const DRSpaceParams& p,
                             const CFitOptions& opt = {});

/// |c(lambda)|^{-2}, interpolated on the table (cubic Lagrange in lambda).
/// Even in lambda; throws DomainError outside the table range.
double plancherel_density(double lambda, const CFunctionTable& table);

}  // namespace drchaos
