#pragma once

// The axiom schemas and inference rules of the three proof systems, as a
// machine-checkable catalogue. Schemas transcribed from the source tables
// are marked `fromTables`; a small set of derived additions (each valid
// under the semantics, documented in README) closes gaps the congruence
// and transition proof generators need.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopi/formula.hpp"
#include "hopi/syntax.hpp"

namespace hopi::proofs {

using hopi::Dialect;

// Which proof systems a schema/rule belongs to.
constexpr unsigned kSL = 1, kWL = 2, kMuSL = 4;
inline unsigned dialect_bit(Dialect d) {
  switch (d) {
    case Dialect::SL: return kSL;
    case Dialect::WL: return kWL;
    case Dialect::MuSL: return kMuSL;
  }
  return 0;
}

// An action metavariable instance for the <alpha> schemas.
struct ActionPattern {
  enum Kind { Tau, Eps, DiaIn, BoxIn, DiaOut };
  Kind kind = Tau;
  Name subject;
  FormPtr payload;  // null for Tau/Eps
};

FormPtr apply_modality(const ActionPattern& act, bool weak, const FormPtr& cont);

enum class MetaSort { Formula, NameSort, VarSort, NameList, Action };

struct Bindings {
  std::map<std::string, FormPtr> formulas;
  std::map<std::string, Name> names;
  std::map<std::string, ProcVar> vars;
  std::map<std::string, std::vector<Name>> nameLists;
  std::optional<ActionPattern> action;
};

struct SideConditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AxiomSchema {
  std::string id;
  unsigned dialects = kSL | kMuSL;
  std::map<std::string, MetaSort> sorts;
  bool fromTables = true;
  bool sampled = true;   // participates in validity sampling
  std::string display;   // one-line rendering for docs
  std::function<FormPtr(const Bindings&)> build;
};

struct RuleSpec {
  std::string id;
  unsigned dialects = kSL | kWL | kMuSL;
  int premises = 2;
  bool fromTables = true;
  // Returns an empty string when (premises, conclusion) is a valid
  // instance, else the reason it is not.
  std::function<std::string(const std::vector<FormPtr>&, const FormPtr&)> check;
};

const std::vector<AxiomSchema>& axiom_catalogue();
const std::vector<RuleSpec>& rule_catalogue();
const AxiomSchema* find_schema(const std::string& id);
const RuleSpec* find_rule(const std::string& id);

// Instantiates and validates meta side conditions; throws
// SideConditionError naming the failing condition.
FormPtr instantiate_axiom(const std::string& id, const Bindings& b);

// Implication shape helpers shared by the kernel and the generators.
bool is_implication(const FormPtr& f, FormPtr& lhs, FormPtr& rhs);
FormPtr make_implication(const FormPtr& lhs, const FormPtr& rhs);

}  // namespace hopi::proofs
