#pragma once

#include <string>
#include <vector>

namespace alomax {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// The cross-validation suite: every closed form checked against its
// quadrature or simulation oracle, with tolerances and runtime budgets
// pinned in the implementation.  `only` filters by substring match on the
// check name.
std::vector<CheckResult> run_validation(const std::string& only = "");

}  // namespace alomax
