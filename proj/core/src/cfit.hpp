#pragma once

#include <span>

#include "drchaos/spherical.hpp"

namespace drchaos::detail {

CFitResult fit_window(double lambda, double rho, std::span<const double> t, std::span<const cplx> phi,
                      int correction_orders);

}  // namespace drchaos::detail
