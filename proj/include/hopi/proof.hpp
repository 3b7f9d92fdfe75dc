#pragma once

// Proof scripts and the checking kernel. A proof is a sequent plus a list
// of steps; every step's formula is validated against its justification.
// The propositional glue is a truth-table oracle over opaque atoms with
// name-inequalities constant-folded.

#include <string>
#include <vector>

#include "hopi/axioms.hpp"
#include "hopi/formula.hpp"

namespace hopi::proofs {

struct Step {
  enum Kind { Premise, Axiom, Taut, MP, Rule, MuInd };
  Kind kind = Taut;
  FormPtr formula;
  int cite1 = 0;              // premise index (Premise), step i (MP, MuInd)
  int cite2 = 0;              // step j (MP)
  std::string id;             // axiom / rule id
  Bindings bindings;          // axiom
  std::vector<int> cites;     // rule premises (1-based step numbers)
};

struct Sequent {
  std::vector<FormPtr> premises;
  FormPtr conclusion;
  Dialect dialect = Dialect::SL;
};

struct Proof {
  Sequent goal;
  std::vector<Step> steps;
};

struct CheckResult {
  bool ok = false;
  int failed_step = 0;  // 1-based; 0 when the goal itself is at fault
  std::string reason;
};

CheckResult check_proof(const Proof& pf);

// Propositional validity treating non-propositional subformulas as opaque
// atoms; rejects formulas with more than 16 distinct atoms.
bool tautology(const FormPtr& f);
int atom_count(const FormPtr& f);

// Line-oriented script format:
//   dialect: sl | wl | musl
//   premise: <formula>            (zero or more)
//   goal: <formula>
//   <i>: <formula> BY premise(<k>) | axiom(<id>[; X := v, ...]) | taut
//                  | mp(<i>,<j>) | rule(<id>; <i>[,<j>]) | muind(<i>)
Proof parse_proof(const std::string& text);
std::string print_proof(const Proof& pf);

}  // namespace hopi::proofs
