#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drchaos::tools {

/// Entry point of the drchaos tool. `args` excludes the program name.
///
/// Exit codes: 0 success, 1 numerical-contract failure (including failed acceptance
/// criteria under `verify`), 2 argument or domain errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Same, for main(): argv[0] is skipped.
int run_command(int argc, const char* const* argv);

}  // namespace drchaos::tools
