#pragma once

// Satisfaction checking. Clauses whose quantifiers range over finite,
// syntactically determined sets are decided exactly; the unbounded
// quantifiers (guarantee, universal input modality, weak closure, fixpoint
// unfolding) are explored within a budget and report Unknown when the
// budget runs out without a certificate. Definite verdicts are sound.

#include <map>
#include <optional>
#include <string>

#include "hopi/formula.hpp"
#include "hopi/lts.hpp"
#include "hopi/syntax.hpp"

namespace hopi {

struct Budget {
  int payload_depth = 3;  // max constructors of generated payloads/contexts
  int pool_size = 64;     // candidate pool cap
  int tau_fuel = 8;       // weak closure depth
  int mu_fuel = 8;        // max fixpoint unfolding index
};

enum class Outcome { Holds, Fails, Unknown };

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  bool budget_hit = true;
  std::string witness;  // concrete-syntax description when available

  static Verdict holds(std::string w = "") { return {Outcome::Holds, false, std::move(w)}; }
  static Verdict fails(std::string w = "") { return {Outcome::Fails, false, std::move(w)}; }
  static Verdict unknown(std::string w = "") { return {Outcome::Unknown, true, std::move(w)}; }
  bool definite() const { return outcome != Outcome::Unknown; }
};

Verdict v_not(const Verdict& v);

class Checker {
public:
  explicit Checker(Budget b) : budget_(b) {}

  // Top-level entry: p must be closed, f dialect-consistent (anything the
  // grammar admits except mixing weak and strong forms).
  Verdict check(const ProcPtr& p, const FormPtr& f);

  // Candidate pool used for the budgeted quantifiers; exposed for reports.
  std::vector<ProcPtr> payload_pool(const ProcPtr& p, const FormPtr& f) const;

  const Budget& budget() const { return budget_; }

private:
  Budget budget_;
  std::map<std::string, Verdict> memo_;

  Verdict eval(const ProcPtr& p, const FormPtr& f);
  Verdict eval_uncached(const ProcPtr& canon, const FormPtr& f);

  Verdict eval_dia_in(const ProcPtr& p, const FormPtr& f);
  Verdict eval_box_in(const ProcPtr& p, const FormPtr& f);
  Verdict eval_dia_out(const ProcPtr& p, const FormPtr& f);
  Verdict eval_guarantee(const ProcPtr& p, const FormPtr& f);
  Verdict eval_reveal(const ProcPtr& p, const FormPtr& f);
  Verdict eval_par(const ProcPtr& p, const FormPtr& f);
  Verdict eval_in_prefix(const ProcPtr& p, const FormPtr& f);
  Verdict eval_weak(const ProcPtr& p, const FormPtr& f);
  Verdict eval_mu(const ProcPtr& p, const FormPtr& f);
};

// Convenience wrapper.
Verdict check(const ProcPtr& p, const FormPtr& f, const Budget& b);

// Processes q with (nu a)q congruent to p, complete up to congruence.
// Shared with the brute-force evaluator used in tests.
std::vector<ProcPtr> reveal_candidates(const ProcPtr& p, const Name& a);

// Deterministic enumeration of closed, restriction-free processes with at
// most maxSize constructors over the given names, smallest first.
std::vector<ProcPtr> enumerate_closed_terms(const std::vector<Name>& names, int maxSize,
                                            size_t cap);

}  // namespace hopi
