#pragma once

// Style guidelines for ORBI specs, reported as warnings L1..L4:
//   L1  case convention: upper-case schematic variables, lower-case
//       eigenvariables and context variables
//   L2  quantification over level-0 types only
//   L3  an arrow instead of a Pi whose variable is unused
//   L4  distinct variable names in the blocks of one context

#include <vector>

#include "orbi/context.hpp"
#include "orbi/diagnostic.hpp"

namespace orbi {

/// Never fails; returns the findings in source order.
std::vector<Diagnostic> lint(const CheckedSpec& spec);

}  // namespace orbi
