#pragma once

// The named verification checks behind the `suite` CLI subcommand and the
// acceptance test binary: the paper-example reproductions and the
// property-based bounds, each pinned to its tolerance.

#include <string>
#include <vector>

namespace ballchain {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double millis = 0.0;
};

const std::vector<std::string>& suite_check_names();

CheckResult run_suite_check(const std::string& name);

/// Runs every check whose name contains `filter` (all when empty).
std::vector<CheckResult> run_suite(const std::string& filter = "");

}  // namespace ballchain
