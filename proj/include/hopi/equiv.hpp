#pragma once

// Behavioral comparison: search for a distinguishing formula of the
// behavioral sublogic, and bounded context/barbed bisimulation games.
// A NoneFound result means no distinction within the stated bounds, never
// an equivalence certificate.

#include <optional>
#include <string>
#include <vector>

#include "hopi/checker.hpp"
#include "hopi/formula.hpp"
#include "hopi/syntax.hpp"

namespace hopi::equiv {

using hopi::Budget;
using hopi::FormPtr;
using hopi::ProcPtr;

struct EquivReport {
  bool distinguished = false;
  std::optional<FormPtr> witness;       // distinguishing formula, if any
  std::vector<std::string> trace;       // game moves, for the game procedures
  std::string bounds;                   // search parameters used
};

// Enumerates sublogic formulas (negation, conjunction, input/output
// capability atoms, internal-step modality, guarantee with process-shaped
// left operands from the candidate pool) up to sizeBound constructors and
// returns the first with opposite definite verdicts.
EquivReport distinguish_L(const ProcPtr& p, const ProcPtr& q, int sizeBound,
                          const Budget& b);

enum class GameKind { Context, Barbed };
enum class Strength { Strong, Weak };

// Bounded bisimulation game; attacker moves come from the transition
// relation (weak closure when weak), defender matching per the chosen
// definition; contexts and payloads from the candidate pool.
EquivReport bisim_bounded(const ProcPtr& p, const ProcPtr& q, GameKind kind,
                          Strength strength, const Budget& b);

}  // namespace hopi::equiv
