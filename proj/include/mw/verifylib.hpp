// The cross-validation suite behind `mw verify` and the acceptance tests.

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mw {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs every acceptance criterion; deterministic order and content.
std::vector<CriterionResult> run_verification();

}  // namespace mw
