#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rootbound {

/// Runs the command-line interface on already-split arguments (no program
/// name). Reports go to `out` or to --output; diagnostics go to `err`.
/// Exit codes: 0 all requested checks passed, 1 a check reported a violation
/// or a certificate was refused, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rootbound
