#pragma once

// Automatic proof generation: structural-congruence proofs replay the
// normalizer's rewrite trace axiom by axiom; transition proofs follow the
// derivation tree after first rotating every unguarded restriction to the
// top, so communication never needs scope extrusion mid-proof.

#include "hopi/lts.hpp"
#include "hopi/proof.hpp"
#include "hopi/syntax.hpp"

namespace hopi::proofs {

// Sequent [P] |- [Q] over the structural embedding, for congruent P, Q.
Proof prove_congruence(const ProcPtr& p, const ProcPtr& q);

// Sequent [P] |- <alpha>[Q] (strong) or <<alpha>>[Q] (weak). The
// transition must be derivable; it is re-derived and rejected otherwise.
Proof prove_transition(const ProcPtr& p, const Action& act, const ProcPtr& q, bool weak);

}  // namespace hopi::proofs
