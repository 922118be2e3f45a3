#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qdistill/protocol.hpp"

namespace qdistill {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;  // one-line summary, filled on pass and fail alike
};

/// Test-only hooks: lets a harness corrupt an input and confirm the suite
/// catches it. Empty by default.
struct FaultInjection {
  bool chi2_sign_flip = false;  // flips the sqrt(1-a^2)/2 corner signs
};

/// Runs the full invariant suite (deterministic seeds). Every check is
/// named; nothing stops on first failure.
std::vector<CheckResult> run_all_checks(const FaultInjection& fault = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qdistill
