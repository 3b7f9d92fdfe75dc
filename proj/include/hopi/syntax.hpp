#pragma once

// Higher-order pi-calculus process terms (second-order fragment: processes
// are communicated, no abstractions). Terms are immutable; every operation
// in this library is a pure function over shared subtrees.

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopi {

// Channel names: lowercase-initial identifiers in the concrete syntax.
struct Name {
  std::string id;
  Name() = default;
  Name(std::string s) : id(std::move(s)) {}
  Name(const char* s) : id(s) {}
  bool operator==(const Name& o) const { return id == o.id; }
  bool operator!=(const Name& o) const { return id != o.id; }
  bool operator<(const Name& o) const { return id < o.id; }
};

// Process variables: uppercase-initial identifiers, disjoint from names.
struct ProcVar {
  std::string id;
  ProcVar() = default;
  ProcVar(std::string s) : id(std::move(s)) {}
  ProcVar(const char* s) : id(s) {}
  bool operator==(const ProcVar& o) const { return id == o.id; }
  bool operator!=(const ProcVar& o) const { return id != o.id; }
  bool operator<(const ProcVar& o) const { return id < o.id; }
};

// Binder that the `n.P` input sugar desugars to; it is never referenced in
// the prefix body, and the printer folds it back into the sugar form.
inline const ProcVar kUnusedBinder{"U_"};

enum class PKind { Nil, Var, Input, Output, Par, Res };

class Process;
using ProcPtr = std::shared_ptr<const Process>;

class Process {
public:
  PKind kind;
  Name name;      // Input/Output subject, Res binder
  ProcVar var;    // Var identifier, Input binder
  ProcPtr a;      // Input body, Output payload, Par left, Res body
  ProcPtr b;      // Output continuation, Par right

  // Free names / free variables, sorted and deduplicated, computed at
  // construction so lookups stay cheap on shared subtrees.
  std::vector<std::string> fn;
  std::vector<std::string> fv;

  static ProcPtr nil();
  static ProcPtr mkvar(ProcVar v);
  static ProcPtr input(Name subj, ProcVar binder, ProcPtr body);
  static ProcPtr output(Name subj, ProcPtr payload, ProcPtr cont);
  static ProcPtr par(ProcPtr l, ProcPtr r);
  static ProcPtr res(Name binder, ProcPtr body);

private:
  Process() = default;
};

bool has_free_name(const ProcPtr& p, const Name& n);
bool has_free_var(const ProcPtr& p, const ProcVar& v);
bool is_closed(const ProcPtr& p);

// Bound names (restriction binders) / bound variables (input binders),
// sorted and deduplicated. n(P) = fn(P) union bn(P).
std::vector<std::string> bn(const ProcPtr& p);
std::vector<std::string> bv(const ProcPtr& p);
std::vector<std::string> names_of(const ProcPtr& p);
bool restriction_free(const ProcPtr& p);

// Nesting depth measure: d(0)=d(U)=0, d(a(U).P)=1+d(P),
// d(a<E>.P)=1+d(E)+d(P), d(P|Q)=d(P)+d(Q), d((nu a)P)=d(P).
long depth(const ProcPtr& p);

// Number of constructors in the term.
int term_size(const ProcPtr& p);

// Alpha-invariant structural key: bound names and variables are printed as
// binder-level indices, free ones verbatim. Two terms get the same key iff
// they are alpha-equivalent.
std::string alpha_key(const ProcPtr& p);
bool alpha_eq(const ProcPtr& p, const ProcPtr& q);

// Concrete syntax (re-parses to an alpha-equivalent term).
std::string print(const ProcPtr& p);

// Capture-avoiding substitution P{E/U}; binders of P are freshened when
// they would capture a free name or variable of E.
ProcPtr substitute(const ProcPtr& p, const ProcVar& u, const ProcPtr& e);

// Capture-avoiding renaming of a free name / a free variable.
ProcPtr rename_free_name(const ProcPtr& p, const Name& from, const Name& to);
ProcPtr rename_free_var(const ProcPtr& p, const ProcVar& from, const ProcVar& to);

// A name of the shape `base`, `base0`, `base1`, ... not present in `avoid`.
std::string fresh_ident(const std::vector<std::string>& avoid, const std::string& base);

// Parrow's encoding of replication: R_P = (nu a)(D | a<P|D>.0) with
// D = a(X).(X | a<X>.0). Rejects a free in P.
ProcPtr replication_encode(const ProcPtr& p, const Name& a);

}  // namespace hopi
