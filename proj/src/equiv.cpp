#include "hopi/equiv.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hopi/canonical.hpp"
#include "hopi/lts.hpp"
#include "hopi/translate.hpp"

namespace hopi::equiv {

using hopi::Checker;
using hopi::FKind;
using hopi::Formula;
using hopi::Name;
using hopi::Outcome;
using hopi::Verdict;

namespace {

// Enumerate sublogic formulas by constructor count. Guarantee left
// operands are drawn from process embeddings in the pool and count one
// constructor, mirroring how the checker treats them as single
// representatives.
std::vector<FormPtr> sublogic_layer(
    int size, const std::vector<Name>& names,
    const std::vector<FormPtr>& pool,
    std::map<int, std::vector<FormPtr>>& memo) {
  auto it = memo.find(size);
  if (it != memo.end()) return it->second;
  std::vector<FormPtr> out;
  if (size >= 1) {
    for (auto& e : pool)
      if (size == 1) out.push_back(e);
  }
  if (size == 3) {
    for (auto& a : names) {
      out.push_back(Formula::dia_in(a, Formula::truth(), Formula::truth()));
      out.push_back(Formula::dia_out(a, Formula::truth(), Formula::truth()));
    }
  }
  if (size >= 2) {
    for (auto& sub : sublogic_layer(size - 1, names, pool, memo)) {
      out.push_back(Formula::lnot(sub));
      out.push_back(Formula::dia_tau(sub));
    }
    for (int ls = 1; ls <= size - 2; ls++) {
      int rs = size - 1 - ls;
      for (auto& l : sublogic_layer(ls, names, pool, memo)) {
        for (auto& r : sublogic_layer(rs, names, pool, memo)) {
          out.push_back(Formula::land(l, r));
          out.push_back(Formula::guarantee(l, r));
        }
      }
    }
  }
  memo[size] = out;
  return out;
}

}  // namespace

EquivReport distinguish_L(const ProcPtr& p, const ProcPtr& q, int sizeBound,
                          const Budget& b) {
  EquivReport rep;
  rep.bounds = "formula size <= " + std::to_string(sizeBound);
  if (congruent(p, q)) return rep;

  std::set<std::string> nameSet;
  for (auto& n : p->fn) nameSet.insert(n);
  for (auto& n : q->fn) nameSet.insert(n);
  std::vector<Name> names;
  for (auto& n : nameSet) names.push_back(Name{n});

  Checker checker(b);
  std::vector<FormPtr> pool;
  {
    std::set<std::string> seen;
    for (auto& t : checker.payload_pool(Process::par(p, q), nullptr)) {
      FormPtr e = embed_process(t);
      if (seen.insert(formula_key(e)).second) pool.push_back(e);
    }
    if (pool.size() > 12) pool.resize(12);
  }

  std::map<int, std::vector<FormPtr>> memo;
  std::set<std::string> tried;
  for (int size = 1; size <= sizeBound; size++) {
    for (auto& f : sublogic_layer(size, names, pool, memo)) {
      if (!tried.insert(formula_key(f)).second) continue;
      Verdict vp = checker.check(p, f);
      Verdict vq = checker.check(q, f);
      if (vp.outcome == Outcome::Holds && vq.outcome == Outcome::Fails) {
        rep.distinguished = true;
        rep.witness = f;
        return rep;
      }
      if (vp.outcome == Outcome::Fails && vq.outcome == Outcome::Holds) {
        rep.distinguished = true;
        rep.witness = Formula::lnot(f);
        return rep;
      }
    }
  }
  return rep;
}

namespace {

std::string print_set(const std::set<std::string>& s) {
  std::string out = "{";
  bool first = true;
  for (auto& x : s) {
    if (!first) out += ",";
    out += x;
    first = false;
  }
  return out + "}";
}

struct Game {
  GameKind kind;
  Strength strength;
  Budget budget;
  int maxDepth;
  std::vector<ProcPtr> payloads;   // closed, no bound names
  std::vector<ProcPtr> contexts;   // processes with one free variable U
  std::map<std::string, int> memo;  // 1 distinguishable, 0 not, 2 in progress

  std::vector<ProcPtr> successors_tau(const ProcPtr& s) {
    if (strength == Strength::Strong) {
      std::vector<ProcPtr> out;
      for (auto& t : step_any(s, StepQuery::tau())) out.push_back(t.target);
      return out;
    }
    return weak_reach_any(s, budget.tau_fuel).states;  // includes s itself
  }

  struct OutMove {
    std::vector<Name> extruded;
    ProcPtr payload;
    ProcPtr target;
    std::string key;
  };

  std::vector<OutMove> successors_out(const ProcPtr& s, const Name& subj) {
    std::vector<OutMove> out;
    auto emit = [&](const Transition& t) {
      if (!(t.action.subject == subj)) return;
      ProcPtr wrapped = t.action.payload;
      for (auto it = t.action.extruded.rbegin(); it != t.action.extruded.rend(); ++it)
        wrapped = Process::res(*it, wrapped);
      OutMove m{t.action.extruded, t.action.payload, t.target,
                alpha_key(canonical(wrapped)) + "|" + canonical_key(t.target)};
      out.push_back(std::move(m));
    };
    if (strength == Strength::Strong) {
      for (auto& t : step_any(s, StepQuery::out())) emit(t);
    } else {
      for (auto& r : weak_reach_any(s, budget.tau_fuel).states)
        for (auto& t : step_any(r, StepQuery::out())) {
          if (!(t.action.subject == subj)) continue;
          for (auto& after : weak_reach_any(t.target, budget.tau_fuel).states) {
            Transition t2{t.source, t.action, after};
            emit(t2);
          }
        }
    }
    return out;
  }

  std::vector<ProcPtr> successors_in(const ProcPtr& s, const Name& subj,
                                     const ProcPtr& e) {
    std::vector<ProcPtr> out;
    if (strength == Strength::Strong) {
      for (auto& t : step_any(s, StepQuery::in(subj, e))) out.push_back(t.target);
      return out;
    }
    std::set<std::string> seen;
    for (auto& r : weak_reach_any(s, budget.tau_fuel).states)
      for (auto& t : step_any(r, StepQuery::in(subj, e)))
        for (auto& after : weak_reach_any(t.target, budget.tau_fuel).states)
          if (seen.insert(alpha_key(after)).second) out.push_back(after);
    return out;
  }

  std::set<std::string> observables(const ProcPtr& s) {
    return barbs(s, strength == Strength::Weak, budget.tau_fuel);
  }

  // True when the attacker can force a difference within `depth` moves.
  bool distinguishable(const ProcPtr& p, const ProcPtr& q, int depth,
                       std::vector<std::string>* trace);
  bool attack_from(const ProcPtr& p, const ProcPtr& q, int depth,
                   std::vector<std::string>* trace);
};

bool Game::attack_from(const ProcPtr& p, const ProcPtr& q, int depth,
                       std::vector<std::string>* trace) {
  // tau moves
  for (auto& pt : successors_tau(p)) {
    bool defended = false;
    for (auto& qt : successors_tau(q)) {
      if (!distinguishable(pt, qt, depth - 1, nullptr)) {
        defended = true;
        break;
      }
    }
    if (!defended) {
      if (trace) trace->push_back("left moves tau to " + print(pt));
      return true;
    }
  }
  // input moves
  std::set<std::string> subjects;
  for (auto& a : input_subjects(p)) subjects.insert(a.id);
  if (strength == Strength::Weak)
    for (auto& r : weak_reach_any(p, budget.tau_fuel).states)
      for (auto& a : input_subjects(r)) subjects.insert(a.id);
  for (auto& subj : subjects) {
    for (auto& e : payloads) {
      for (auto& pt : successors_in(p, Name{subj}, e)) {
        bool defended = false;
        for (auto& qt : successors_in(q, Name{subj}, e)) {
          if (!distinguishable(pt, qt, depth - 1, nullptr)) {
            defended = true;
            break;
          }
        }
        if (!defended) {
          if (trace)
            trace->push_back("left receives " + print(e) + " at " + subj);
          return true;
        }
      }
    }
  }
  // output moves with receiving-context comparison
  std::set<std::string> outSubj;
  {
    auto bs = observables(p);
    for (auto& b : bs)
      if (!b.empty() && b[0] == '\'') outSubj.insert(b.substr(1));
  }
  for (auto& subj : outSubj) {
    for (auto& pm : successors_out(p, Name{subj})) {
      bool defended = false;
      for (auto& qm : successors_out(q, Name{subj})) {
        bool allContextsOk = true;
        for (auto& ctx : contexts) {
          ProcPtr pc = substitute(ctx, ProcVar{"U"}, pm.payload);
          ProcPtr qc = substitute(ctx, ProcVar{"U"}, qm.payload);
          ProcPtr pside = Process::par(pm.target, pc);
          ProcPtr qside = Process::par(qm.target, qc);
          for (auto it = pm.extruded.rbegin(); it != pm.extruded.rend(); ++it)
            pside = Process::res(*it, pside);
          for (auto it = qm.extruded.rbegin(); it != qm.extruded.rend(); ++it)
            qside = Process::res(*it, qside);
          if (distinguishable(pside, qside, depth - 1, nullptr)) {
            allContextsOk = false;
            break;
          }
        }
        if (allContextsOk) {
          defended = true;
          break;
        }
      }
      if (!defended) {
        if (trace) trace->push_back("left emits at " + subj);
        return true;
      }
    }
  }
  return false;
}

bool Game::distinguishable(const ProcPtr& p, const ProcPtr& q, int depth,
                           std::vector<std::string>* trace) {
  if (depth <= 0) return false;
  std::string key = canonical_key(p) + "\x01" + canonical_key(q) + "\x01" +
                    std::to_string(depth);
  auto it = memo.find(key);
  if (it != memo.end() && it->second != 2) return it->second == 1;
  if (it != memo.end() && it->second == 2) return false;  // cycle: no distinction here
  memo[key] = 2;

  bool result = false;
  if (kind == GameKind::Barbed) {
    auto bp = observables(p);
    auto bq = observables(q);
    if (bp != bq) {
      if (trace) trace->push_back("barbs differ: left " + print_set(bp) +
                                  " vs right " + print_set(bq));
      result = true;
    }
    if (!result) {
      // internal moves
      for (auto& pt : successors_tau(p)) {
        bool defended = false;
        for (auto& qt : successors_tau(q))
          if (!distinguishable(pt, qt, depth - 1, nullptr)) { defended = true; break; }
        if (!defended) {
          if (trace) trace->push_back("left moves tau to " + print(pt));
          result = true;
          break;
        }
      }
      for (auto& qt : !result ? successors_tau(q) : std::vector<ProcPtr>{}) {
        bool defended = false;
        for (auto& pt : successors_tau(p))
          if (!distinguishable(qt, pt, depth - 1, nullptr)) { defended = true; break; }
        if (!defended) {
          if (trace) trace->push_back("right moves tau to " + print(qt));
          result = true;
          break;
        }
      }
    }
    if (!result) {
      // closure under parallel contexts
      for (auto& c : payloads) {
        if (distinguishable(Process::par(p, c), Process::par(q, c), depth - 1, nullptr)) {
          if (trace) trace->push_back("compose with " + print(c));
          result = true;
          break;
        }
      }
    }
  } else {
    result = attack_from(p, q, depth, trace) || attack_from(q, p, depth, nullptr);
  }
  memo[key] = result ? 1 : 0;
  return result;
}

}  // namespace

EquivReport bisim_bounded(const ProcPtr& p, const ProcPtr& q, GameKind kind,
                          Strength strength, const Budget& b) {
  EquivReport rep;
  Game g;
  g.kind = kind;
  g.strength = strength;
  g.budget = b;
  g.maxDepth = std::max(2, b.tau_fuel / 2);
  rep.bounds = "game depth " + std::to_string(g.maxDepth) + ", pool " +
               std::to_string(b.pool_size);

  Checker checker(b);
  g.payloads = checker.payload_pool(Process::par(p, q), nullptr);
  if (g.payloads.size() > 8) g.payloads.resize(8);

  // one-free-variable contexts: U, U|c, receivers and emitters around U
  {
    std::set<std::string> seen;
    auto push = [&](const ProcPtr& c) {
      if (seen.insert(alpha_key(c)).second) g.contexts.push_back(c);
    };
    ProcPtr u = Process::mkvar(ProcVar{"U"});
    push(u);
    std::set<std::string> nameSet;
    for (auto& n : p->fn) nameSet.insert(n);
    for (auto& n : q->fn) nameSet.insert(n);
    nameSet.insert("cw");
    int count = 0;
    for (auto& n : nameSet) {
      if (count++ >= 3) break;
      push(Process::par(u, Process::output(Name{n}, Process::nil(), Process::nil())));
      push(Process::output(Name{n}, u, Process::nil()));
      push(Process::par(u, Process::input(Name{n}, ProcVar{"W"}, Process::nil())));
    }
    if (g.contexts.size() > 8) g.contexts.resize(8);
  }

  std::vector<std::string> trace;
  if (g.distinguishable(canonical(p), canonical(q), g.maxDepth, &trace)) {
    rep.distinguished = true;
    rep.trace = trace;
  }
  return rep;
}

}  // namespace hopi::equiv
