#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffiter::cli {

// Runs one CLI invocation (args excludes the program name) writing results to
// out and diagnostics to err.  Returns the process exit code: 0 on success,
// 1 on domain errors (error name printed to err), 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffiter::cli
