#pragma once

// Spatial-logic formulas: the strong dialect, its weak-modalities variant,
// and the least-fixpoint extension. One AST covers all three; dialect
// predicates classify terms. Or/implication are parse-time sugar over
// negation and conjunction, kept as print hints.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopi/syntax.hpp"

namespace hopi {

enum class FKind {
  True, False, Not, And,
  DiaTau,   // <tau>A
  DiaIn,    // <a<A1>>A2     some received payload satisfies A1
  BoxIn,    // <a[A1]>A2     every payload satisfying A1 can be received
  DiaOut,   // <'a<A1>>A2
  Zero, PropVar,
  InPrefix,   // in a(X).A
  InAdjoint,  // A \ in a(X)
  OutPrefix,  // out a<A1>.A2
  OutAdjoint, // A \ out a
  Par,        // A | B
  Guarantee,  // A |> B
  Reveal,     // a @ A
  Hide,       // A / a
  FreshName,  // (N x) A
  FreshVar,   // (NV X) A
  NotFree,    // (- a) A
  NoBound,    // (~-) A
  Neq,        // a != b
  WeakEps,    // <<eps>>A
  WeakIn,     // <<a<A1>>>A2
  WeakBoxIn,  // <<a[A1]>>A2
  WeakOut,    // <<'a<A1>>>A2
  Mu,         // mu X. A
};

enum class Sugar { None, Or, Implies };

class Formula;
using FormPtr = std::shared_ptr<const Formula>;

class Formula {
public:
  FKind kind;
  Name name;     // subject / revelation / hiding / notfree / neq lhs / freshname binder
  Name name2;    // neq rhs
  ProcVar var;   // propvar / prefix pattern / freshvar binder / mu binder
  FormPtr a, b;  // subformulas (payload first for modal/prefix binary forms)
  Sugar sugar = Sugar::None;

  static FormPtr truth();
  static FormPtr falsity();
  static FormPtr lnot(FormPtr x);
  static FormPtr land(FormPtr x, FormPtr y);
  static FormPtr lor(FormPtr x, FormPtr y);       // not(not x and not y)
  static FormPtr implies(FormPtr x, FormPtr y);   // not(x and not y)
  static FormPtr iff(FormPtr x, FormPtr y);       // (x -> y) and (y -> x)
  static FormPtr dia_tau(FormPtr cont);
  static FormPtr dia_in(Name a, FormPtr payload, FormPtr cont);
  static FormPtr box_in(Name a, FormPtr payload, FormPtr cont);
  static FormPtr dia_out(Name a, FormPtr payload, FormPtr cont);
  static FormPtr zero();
  static FormPtr propvar(ProcVar v);
  static FormPtr in_prefix(Name a, ProcVar x, FormPtr body);
  static FormPtr in_adjoint(FormPtr body, Name a, ProcVar x);
  static FormPtr out_prefix(Name a, FormPtr payload, FormPtr cont);
  static FormPtr out_adjoint(FormPtr body, Name a);
  static FormPtr par(FormPtr x, FormPtr y);
  static FormPtr guarantee(FormPtr x, FormPtr y);
  static FormPtr reveal(Name a, FormPtr x);
  static FormPtr hide(FormPtr x, Name a);
  static FormPtr fresh_name(Name x, FormPtr body);
  static FormPtr fresh_var(ProcVar x, FormPtr body);
  static FormPtr not_free(Name a, FormPtr x);
  static FormPtr no_bound(FormPtr x);
  static FormPtr neq(Name a, Name b);
  static FormPtr weak_eps(FormPtr cont);
  static FormPtr weak_in(Name a, FormPtr payload, FormPtr cont);
  static FormPtr weak_box_in(Name a, FormPtr payload, FormPtr cont);
  static FormPtr weak_out(Name a, FormPtr payload, FormPtr cont);
  static FormPtr mu(ProcVar x, FormPtr body);  // positivity is the caller's duty

  Formula() = default;
};

// Free names: (N x) binds a name; everything else leaves names free.
std::vector<std::string> fn(const FormPtr& f);
// Free propositional variables: (NV X) and mu bind; prefix pattern
// variables are part of the pattern and stay free.
std::vector<std::string> fpv(const FormPtr& f);

int formula_size(const FormPtr& f);

// Alpha-invariant key (binders: FreshName, FreshVar, Mu).
std::string formula_key(const FormPtr& f);
bool formula_alpha_eq(const FormPtr& f, const FormPtr& g);

std::string print(const FormPtr& f);

// Every free occurrence of the mu/fresh variable under an even number of
// negations. Guarantees and box payloads are not tracked, matching the
// negation-counting definition.
bool positive_in(const FormPtr& f, const ProcVar& x);

enum class Dialect { SL, WL, MuSL };
bool in_dialect(const FormPtr& f, Dialect d);
// Smallest dialect the formula belongs to, if any (a formula mixing weak
// and strong/mu constructs fits none).
std::optional<Dialect> dialect_of(const FormPtr& f);

// The behavioral sublogic: negation, conjunction, <a<T>>T, <'a<T>>T,
// <tau>A, guarantee.
bool in_sublogic_L(const FormPtr& f);

// Capture-avoiding name replacement A{b/a}; (N x) binders shadow and are
// freshened when they would capture the target.
FormPtr formula_rename_name(const FormPtr& f, const Name& from, const Name& to);

// Variable renaming A{Y/X}; (NV X)/mu binders shadow, and input-prefix
// patterns on X shadow their body (matching alpha-renaming of the matched
// process binder).
FormPtr formula_rename_var(const FormPtr& f, const ProcVar& from, const ProcVar& to);

// Fixpoint-unfolding substitution A{B/X}: replaces free propositional
// occurrences of X; prefix patterns on X shadow; quantifier binders are
// freshened to avoid capturing B's free identifiers.
FormPtr formula_subst(const FormPtr& f, const ProcVar& x, const FormPtr& b);

std::string fresh_formula_name(const std::vector<std::string>& avoid, const std::string& base);

}  // namespace hopi
