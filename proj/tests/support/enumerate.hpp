#pragma once

// Exhaustive enumerators for the small-world acceptance checks.

#include <vector>

#include "hopi/formula.hpp"
#include "hopi/syntax.hpp"

namespace testgen {

using hopi::FormPtr;
using hopi::Name;
using hopi::ProcPtr;

// All closed processes with at most maxSize constructors over the given
// names and a single variable X (usable only under an input binder).
// Restrictions are included. Deduplicated up to alpha-equivalence.
std::vector<ProcPtr> all_closed_processes(const std::vector<Name>& names, int maxSize);

// All formulas of the exactly decidable fragment with at most maxSize
// constructors over the given names: no weak or fixpoint forms, and every
// modal/guarantee argument syntactically a process.
std::vector<FormPtr> all_exact_formulas(const std::vector<Name>& names, int maxSize);

}  // namespace testgen
