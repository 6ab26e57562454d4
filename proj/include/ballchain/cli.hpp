#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ballchain {

/// Runs the command line given argv-style arguments (program name excluded).
/// Returns the process exit code: 0 success/pass, 1 criterion fail (report
/// still written), 2 usage or I/O error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ballchain
