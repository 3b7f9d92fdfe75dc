#pragma once

// One-step transitions of the higher-order LTS, bounded tau closure, and
// observability. Transitions are computed on canonical forms and targets
// are returned canonical, so the relation is closed under structural
// congruence.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hopi/canonical.hpp"
#include "hopi/syntax.hpp"

namespace hopi {

struct Action {
  enum Kind { Tau, In, Out };
  Kind kind = Tau;
  Name subject;                 // In / Out
  std::vector<Name> extruded;   // Out only; pairwise distinct, free in payload
  ProcPtr payload;              // In / Out

  static Action tau() { return {}; }
  static Action in(Name a, ProcPtr e);
  static Action out(Name a, std::vector<Name> ext, ProcPtr e);
};

std::string print(const Action& act);

struct Transition {
  ProcPtr source;
  Action action;
  ProcPtr target;
};

struct StepQuery {
  enum Kind { Tau, Out, In };
  Kind kind = Tau;
  Name subject;   // In
  ProcPtr payload;  // In; bn(payload) must be empty

  static StepQuery tau() { return {}; }
  static StepQuery out() { return {StepQuery::Out, {}, nullptr}; }
  static StepQuery in(Name a, ProcPtr e) { return {StepQuery::In, std::move(a), std::move(e)}; }
};

// Complete set of one-step transitions of a closed process matching the
// query. Input transitions are payload-parameterized (the rule admits any
// payload without bound names, so callers supply candidates).
std::vector<Transition> step(const ProcPtr& p, const StepQuery& q);

// Same, without the closedness precondition (free variables are inert);
// the checker recurses through open terms.
std::vector<Transition> step_any(const ProcPtr& p, const StepQuery& q);

// Subjects at which the process can currently receive.
std::vector<Name> input_subjects(const ProcPtr& p);

// Every input capability at `a` discards its payload (binder unused), so
// input residuals at `a` do not depend on the received process.
bool inputs_ignore_payload(const ProcPtr& p, const Name& a);

struct ReachResult {
  std::vector<ProcPtr> states;  // canonical, deduplicated, includes the start
  bool truncated = false;       // frontier still growing at the fuel limit
};

// All processes reachable by at most `fuel` tau steps, deduplicated by
// structural congruence.
ReachResult weak_reach(const ProcPtr& p, int fuel);
ReachResult weak_reach_any(const ProcPtr& p, int fuel);

// Observables: "a" for an input barb at a, "'a" for an output barb.
std::set<std::string> barbs(const ProcPtr& p, bool weak, int fuel);

}  // namespace hopi
