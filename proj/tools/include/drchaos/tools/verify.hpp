#pragma once

#include <functional>
#include <string>
#include <vector>

#include "drchaos/radial_ode.hpp"

namespace drchaos::tools {

struct CriterionOutcome {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    /// Builtin name or JSON path; used by the criteria that are not pinned to a space.
    std::string space = "heisenberg1";
    /// Criteria to run (1..12); empty runs all of them.
    std::vector<int> only;
    OdeOptions ode{};
};

inline constexpr int kCriterionCount = 12;

/// Runs the acceptance criteria in order. `on_result` sees each outcome as soon as it is known.
std::vector<CriterionOutcome> run_acceptance(const VerifyOptions& opt,
                                             const std::function<void(const CriterionOutcome&)>& on_result = {});

/// "[PASS] 03 eigen-pairing ...: detail (1.2 s)"
std::string format_outcome(const CriterionOutcome& o);

}  // namespace drchaos::tools
