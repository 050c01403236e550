// Acceptance gate: runs every closed-form-vs-oracle cross-check with its
// tolerance and runtime budget pinned in src/validation.cpp, printing one
// PASS/FAIL line per criterion.  Exit code 0 iff all pass.

#include <cstdio>

#include "alomax/validation.hpp"

int main() {
  const auto results = alomax::run_validation();
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%s %-24s (%6.2fs) %s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}
