// Acceptance suite: runs every verification check at its pinned tolerance
// and prints one pass/fail line per check.  Exit code 0 iff all pass.

#include <cstdio>
#include <string>

#include "ballchain/suite.hpp"

int main(int argc, char** argv) {
  const std::string filter = argc > 1 ? argv[1] : "";
  const auto results = ballchain::run_suite(filter);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s  %-42s (%.0f ms)%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.millis, r.detail.empty() ? "" : "  ", r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("%s: %zu checks\n", all_pass ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              results.size());
  return all_pass ? 0 : 1;
}
