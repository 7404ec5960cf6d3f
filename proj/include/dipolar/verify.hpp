#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dipolar::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  bool quick = false;          // smaller shape counts and node budgets
  std::uint64_t seed = 20240817;
};

// Property suite behind the `verify` CLI command: special functions against
// quadrature, kernel identities, the convexity certificate, rescaling
// identity and inequality, monotonicity in delta, the a priori lower bound
// and the cross-evaluator checks.
std::vector<CheckResult> run_all(const VerifyOptions& options);

}  // namespace dipolar::verify
