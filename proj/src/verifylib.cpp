#include "mw/verifylib.hpp"

namespace mw {

std::vector<CriterionResult> run_verification() { return {}; }

}  // namespace mw
