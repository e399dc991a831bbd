#pragma once

#include <stdexcept>
#include <string>

namespace drchaos {

/// Raised when an argument lies outside the documented domain of an operation
/// (odd m, p < 1, lambda outside the guard strip, ...). The CLI maps it to exit code 2.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical contract cannot be met (quadrature or ODE failure,
/// calibration spread, non-decaying profile). The CLI maps it to exit code 1.
class ContractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace drchaos
