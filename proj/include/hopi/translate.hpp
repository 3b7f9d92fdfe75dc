#pragma once

// Bridges between processes and formulas: the process-shape reader, the
// structural embedding of processes as formulas (restriction as revelation,
// input as prefix pattern), the quantified process-to-formula translation,
// the weak-to-fixpoint translation, and the replication combinator.

#include <optional>

#include "hopi/formula.hpp"
#include "hopi/syntax.hpp"

namespace hopi {

// Reads a formula built only of Zero/PropVar/InPrefix/OutPrefix/Par/Reveal
// back as the process it denotes; empty otherwise.
std::optional<ProcPtr> as_process(const FormPtr& f);

// Structural embedding: (nu a)P becomes a @ [P], a(X).P becomes in a(X).[P].
// Its image is exactly what as_process accepts.
FormPtr embed_process(const ProcPtr& p);

// Quantified translation: (nu a)P maps to (N a)(a @ [P]) and a(X).P to
// (NV X)(in a(X).[P]); other constructors map homomorphically.
FormPtr translate_tps(const ProcPtr& p);

// Weak modalities into fixpoint form, homomorphic elsewhere; input must be
// in the weak dialect and the result is fixpoint-dialect and positive.
FormPtr translate_twm(const FormPtr& f);

// Replication as a fixpoint: !A = not mu X. not(A | not X).
FormPtr bang(const FormPtr& a);

}  // namespace hopi
