#pragma once

#include <span>
#include <vector>

#include "drchaos/nagroup.hpp"
#include "drchaos/radial.hpp"

namespace drchaos {

struct OdeOptions {
    double rtol = 1e-13;
    /// Starting radius for the series initialisation u = 1 + a2 r^2 + a4 r^4.
    double r0 = 1e-3;
    long max_steps = 2'000'000;
    /// Steps below this size are reported as an underflow instead of being absorbed.
    double min_step = 1e-14;
};

struct RadialSolution {
    std::vector<cplx> u;
    std::vector<cplx> du;
};

/// Regular solution of u'' + D(r) u' + (lambda^2 + rho^2) u = 0 with u(0) = 1,
/// D = (d/dr) log A. Sampled at `points`, which must be sorted ascending and >= 0.
///
/// Internally integrates y = e^{rho r} u with an embedded Runge-Kutta-Fehlberg 7(8)
/// pair and a relative error norm over the whole state, so decaying and
/// oscillating tails keep full relative accuracy. Throws ContractError on
/// step-size underflow.
RadialSolution solve_radial(cplx lambda, const DRSpaceParams& p, std::span<const double> points,
                            const OdeOptions& opt = {});

}  // namespace drchaos
