#pragma once

// Independent oracles for the acceptance and property tests:
//  - structural congruence by exhaustive bidirectional axiom rewriting,
//  - a direct rule-by-rule transition engine on raw terms,
//  - a two-valued satisfaction evaluator for the exactly decidable
//    fragment, built on the two above.
// These deliberately avoid the library's canonical forms.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hopi/formula.hpp"
#include "hopi/syntax.hpp"

namespace oracle {

using hopi::FormPtr;
using hopi::Name;
using hopi::ProcPtr;

// All single-step rewrites by one structural-congruence axiom (both
// directions) at any position, up to alpha-renaming of the redex.
std::vector<ProcPtr> rewrites1(const ProcPtr& p);

// Set of alpha-keys reachable within `depth` rewrites, capped by node
// count; terms above sizeCap constructors are pruned.
std::set<std::string> closure(const ProcPtr& p, int depth, int sizeCap);

// Congruence by meeting of depth-3 closures (a distance-6 certificate).
bool congruent_by_rewriting(const ProcPtr& p, const ProcPtr& q);

// Class members discovered within the given rewrite depth.
std::vector<ProcPtr> class_members(const ProcPtr& p, int depth, int sizeCap);

// Direct transition engine (no canonicalization).
struct NaiveOut {
  Name subj;
  std::vector<Name> extruded;
  ProcPtr payload;
  ProcPtr target;
};
std::vector<ProcPtr> naive_taus(const ProcPtr& p);
std::vector<NaiveOut> naive_outs(const ProcPtr& p);
std::vector<ProcPtr> naive_ins(const ProcPtr& p, const Name& subj, const ProcPtr& payload);

// Two-valued satisfaction on the exactly decidable fragment: no weak
// modalities, no fixpoints, and every modal/guarantee argument
// syntactically a process. Throws on formulas outside the fragment.
bool eval_def6(const ProcPtr& p, const FormPtr& f);
bool in_exact_fragment(const FormPtr& f);

}  // namespace oracle
