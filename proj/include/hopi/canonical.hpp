#pragma once

// Structural-congruence canonical forms. The normal form satisfies:
//   - no subterm (nu a) M with a not free in M,
//   - parallel components form a flattened right-nested spine, sorted by
//     their alpha-invariant keys, with no nil components,
//   - each restriction wraps the smallest sub-multiset of components whose
//     free names contain its binder; adjacent restrictions are ordered by
//     the first free occurrence of the binder in the body,
//   - bound names and variables follow a traversal-indexed naming scheme.
//
// normalize() can record the elementary rewrite it performed at each step;
// the proof generator replays those steps as axiom applications.

#include <string>
#include <vector>

#include "hopi/syntax.hpp"

namespace hopi {

struct RewriteStep {
  enum Kind {
    ParComm,      // P|Q -> Q|P
    ParAssocLR,   // (P|Q)|R -> P|(Q|R)
    ParAssocRL,   // P|(Q|R) -> (P|Q)|R
    ParUnitDrop,  // P|0 -> P
    ScopeExtOut,  // (nu a)(P|Q) -> P|(nu a)Q   when a not free in P
    ResSwap,      // (nu a)(nu b)P -> (nu b)(nu a)P
    ResVacDrop,   // (nu a)M -> M               when a not free in M
    AlphaRes,     // rename a restriction binder
    AlphaIn,      // rename an input binder
  };
  Kind kind;
  std::vector<int> path;  // child indices from the root (0 = a, 1 = b)
  std::string x, y;       // binder names involved (alpha: old/new, swap: outer/inner)
  ProcPtr before;         // whole term before the step
  ProcPtr after;          // whole term after the step
};

using RewriteTrace = std::vector<RewriteStep>;

struct CanonicalProcess {
  ProcPtr term;
  bool certified = true;  // normalize() output always is
};

// Canonical form; result is congruent to the input and idempotent.
ProcPtr canonical(const ProcPtr& p);
CanonicalProcess normalize(const ProcPtr& p);

// Same rewrite sequence with every elementary step recorded.
ProcPtr canonical_traced(const ProcPtr& p, RewriteTrace& trace);

// Alpha-renames every binder to a fresh identifier distinct from all names
// and variables of the term and from extraAvoid, recording the steps. The
// proof generators need globally distinct binders.
ProcPtr freshen_binders_traced(const ProcPtr& p, RewriteTrace& trace,
                               const std::vector<std::string>& extraAvoid);

bool is_canonical(const ProcPtr& p);

// Structural congruence (the six axioms plus alpha-conversion and the
// derived erasure law), decided by comparing canonical forms.
bool congruent(const ProcPtr& p, const ProcPtr& q);

// Key of the canonical form; equal keys iff congruent.
std::string canonical_key(const ProcPtr& p);

// Top-level parallel components of a canonical form (the spine flattened);
// a non-Par term is its own single component.
std::vector<ProcPtr> components(const ProcPtr& canon);
ProcPtr par_of(const std::vector<ProcPtr>& comps);

ProcPtr subterm_at(const ProcPtr& p, const std::vector<int>& path);
ProcPtr replace_at(const ProcPtr& p, const std::vector<int>& path, const ProcPtr& sub);

}  // namespace hopi
