#pragma once

#include <string>
#include <vector>

#include "divforge/common.hpp"

namespace divforge::verify {

// One invariant-suite outcome.  `suite` names the property family, `subject`
// the bundled curve or module it ran against.  On success `detail` carries a
// short statistic; on failure it names the first violated property.
struct CheckResult {
  std::string suite;
  std::string subject;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  int passed = 0;
  int failed = 0;
  bool ok() const { return failed == 0; }
};

// Runs every invariant suite over all bundled curves plus the module-level
// self-checks.  Failures are collected in the report, never thrown.
VerifyReport run_all();

}  // namespace divforge::verify
