#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aoiq {

/// Run one CLI invocation. `args` excludes the program name, e.g.
/// {"evaluate", "--config", "system.json"}. Returns the process exit
/// code: 0 on success, 1 on validation/usage errors, 2 on numerical
/// errors, with a one-line diagnostic on `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aoiq
