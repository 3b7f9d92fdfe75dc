#include "hopi/checker.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "hopi/canonical.hpp"
#include "hopi/translate.hpp"

namespace hopi {

Verdict v_not(const Verdict& v) {
  switch (v.outcome) {
    case Outcome::Holds: return Verdict::fails(v.witness);
    case Outcome::Fails: return Verdict::holds(v.witness);
    case Outcome::Unknown: return v;
  }
  return v;
}

namespace {

// Three-valued accumulator for an existential over a finite candidate set.
// `incomplete` records that some candidates were out of reach (truncated
// closure, capped pool): without a witness the result degrades to Unknown.
struct ExistsAcc {
  bool sawUnknown = false;
  bool incomplete = false;
  std::optional<Verdict> found;

  void add(const Verdict& v) {
    if (found) return;
    if (v.outcome == Outcome::Holds) found = v;
    if (v.outcome == Outcome::Unknown) sawUnknown = true;
  }
  Verdict result() const {
    if (found) return *found;
    if (sawUnknown || incomplete) return Verdict::unknown();
    return Verdict::fails();
  }
};

Verdict v_and(const Verdict& l, const Verdict& r) {
  if (l.outcome == Outcome::Fails) return l;
  if (r.outcome == Outcome::Fails) return r;
  if (l.outcome == Outcome::Unknown || r.outcome == Outcome::Unknown)
    return Verdict::unknown();
  return Verdict::holds();
}

void collect_subterms(const ProcPtr& p, std::vector<ProcPtr>& out) {
  out.push_back(p);
  if (p->a) collect_subterms(p->a, out);
  if (p->b) collect_subterms(p->b, out);
}

void collect_formula_processes(const FormPtr& f, std::vector<ProcPtr>& out) {
  if (!f) return;
  if (auto p = as_process(f)) {
    out.push_back(*p);
    return;
  }
  collect_formula_processes(f->a, out);
  collect_formula_processes(f->b, out);
}

bool input_capable_at(const ProcPtr& canon, const Name& a) {
  for (auto& s : input_subjects(canon))
    if (s == a) return true;
  return false;
}

}  // namespace

std::vector<ProcPtr> reveal_candidates(const ProcPtr& p, const Name& a) {
  ProcPtr canon = canonical(p);
  if (has_free_name(canon, a)) return {};
  std::vector<ProcPtr> out;
  std::set<std::string> seen;
  auto push = [&](const ProcPtr& q) {
    ProcPtr c = canonical(q);
    if (seen.insert(alpha_key(c)).second) out.push_back(c);
  };
  push(canon);  // (nu a) p == p when a is not free
  // Every restriction reachable without crossing a prefix can be rotated to
  // the top and renamed to a.
  std::function<void(const ProcPtr&, std::vector<int>&)> walk =
      [&](const ProcPtr& t, std::vector<int>& path) {
        if (t->kind == PKind::Par) {
          path.push_back(0);
          walk(t->a, path);
          path.back() = 1;
          walk(t->b, path);
          path.pop_back();
          return;
        }
        if (t->kind == PKind::Res) {
          push(replace_at(canon, path, rename_free_name(t->a, t->name, a)));
          path.push_back(0);
          walk(t->a, path);
          path.pop_back();
        }
      };
  std::vector<int> path;
  walk(canon, path);
  return out;
}

std::vector<ProcPtr> enumerate_closed_terms(const std::vector<Name>& names, int maxSize,
                                            size_t cap) {
  if (maxSize < 1) return {};
  // gen[size][depth] = terms with exactly `size` constructors whose free
  // variables lie among B0..B(depth-1).
  int maxDepth = maxSize + 1;
  std::vector<std::vector<std::vector<ProcPtr>>> gen(
      maxSize + 1, std::vector<std::vector<ProcPtr>>(maxDepth + 1));
  auto bvar = [](int i) { return ProcVar{"B" + std::to_string(i)}; };
  for (int d = 0; d <= maxDepth; d++) {
    gen[1][d].push_back(Process::nil());
    for (int i = 0; i < d; i++) gen[1][d].push_back(Process::mkvar(bvar(i)));
  }
  for (int size = 2; size <= maxSize; size++) {
    for (int d = 0; d + 1 <= maxDepth; d++) {
      auto& bucket = gen[size][d];
      for (const auto& n : names) {
        for (const auto& body : gen[size - 1][d + 1])
          bucket.push_back(Process::input(n, bvar(d), body));
      }
      for (int se = 1; se <= size - 2; se++) {
        int sk = size - 1 - se;
        for (const auto& n : names)
          for (const auto& e : gen[se][d])
            for (const auto& k : gen[sk][d])
              bucket.push_back(Process::output(n, e, k));
        for (const auto& l : gen[se][d])
          for (const auto& r : gen[sk][d])
            bucket.push_back(Process::par(l, r));
      }
    }
  }
  std::vector<ProcPtr> out;
  std::set<std::string> seen;
  for (int size = 1; size <= maxSize && out.size() < cap; size++) {
    std::vector<std::pair<std::string, ProcPtr>> layer;
    for (auto& t : gen[size][0]) {
      ProcPtr c = canonical(t);
      auto key = alpha_key(c);
      if (seen.insert(key).second) layer.push_back({key, c});
    }
    std::sort(layer.begin(), layer.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [k, t] : layer) {
      if (out.size() >= cap) break;
      out.push_back(t);
    }
  }
  return out;
}

std::vector<ProcPtr> Checker::payload_pool(const ProcPtr& p, const FormPtr& f) const {
  std::vector<ProcPtr> raw;
  raw.push_back(Process::nil());
  collect_subterms(canonical(p), raw);
  if (f) collect_formula_processes(f, raw);

  std::vector<std::pair<std::string, ProcPtr>> keep;
  std::set<std::string> seen;
  auto push = [&](const ProcPtr& t) {
    if (!is_closed(t)) return;
    ProcPtr c = canonical(t);
    if (!restriction_free(c)) return;
    auto key = alpha_key(c);
    if (seen.insert(key).second) keep.push_back({key, c});
  };
  for (auto& t : raw) push(t);

  std::set<std::string> nameSet;
  for (auto& n : p->fn) nameSet.insert(n);
  if (f)
    for (auto& n : fn(f)) nameSet.insert(n);
  std::vector<Name> basis;
  for (auto& n : nameSet) {
    basis.push_back(Name{n});
    if (basis.size() >= 2) break;
  }
  if (basis.empty()) basis.push_back(Name{"a"});
  for (auto& t : enumerate_closed_terms(basis, budget_.payload_depth,
                                        static_cast<size_t>(budget_.pool_size)))
    push(t);

  std::stable_sort(keep.begin(), keep.end(), [](auto& a, auto& b) {
    int sa = term_size(a.second), sb = term_size(b.second);
    return sa != sb ? sa < sb : a.first < b.first;
  });
  std::vector<ProcPtr> out;
  for (auto& [k, t] : keep) {
    if (out.size() >= static_cast<size_t>(budget_.pool_size)) break;
    out.push_back(t);
  }
  return out;
}

Verdict check(const ProcPtr& p, const FormPtr& f, const Budget& b) {
  Checker c(b);
  return c.check(p, f);
}

Verdict Checker::check(const ProcPtr& p, const FormPtr& f) {
  if (!is_closed(p))
    throw std::invalid_argument("check: process must be closed");
  if (!dialect_of(f))
    throw std::invalid_argument("check: formula mixes weak and strong/fixpoint forms");
  return eval(p, f);
}

Verdict Checker::eval(const ProcPtr& p, const FormPtr& f) {
  ProcPtr canon = canonical(p);
  std::string key = alpha_key(canon) + "\x01" + formula_key(f);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Verdict v = eval_uncached(canon, f);
  memo_.emplace(std::move(key), v);
  return v;
}

Verdict Checker::eval_uncached(const ProcPtr& cp, const FormPtr& f) {
  switch (f->kind) {
    case FKind::True: return Verdict::holds();
    case FKind::False: return Verdict::fails();
    case FKind::Not: return v_not(eval(cp, f->a));
    case FKind::And: return v_and(eval(cp, f->a), eval(cp, f->b));
    case FKind::DiaTau: {
      ExistsAcc acc;
      for (auto& t : step_any(cp, StepQuery::tau())) {
        Verdict v = eval(t.target, f->a);
        if (v.outcome == Outcome::Holds) return Verdict::holds(print(t.target));
        acc.add(v);
      }
      return acc.result();
    }
    case FKind::DiaIn: return eval_dia_in(cp, f);
    case FKind::BoxIn: return eval_box_in(cp, f);
    case FKind::DiaOut: return eval_dia_out(cp, f);
    case FKind::Zero:
      return cp->kind == PKind::Nil ? Verdict::holds() : Verdict::fails();
    case FKind::PropVar:
      return (cp->kind == PKind::Var && cp->var == f->var) ? Verdict::holds()
                                                           : Verdict::fails();
    case FKind::InPrefix: return eval_in_prefix(cp, f);
    case FKind::InAdjoint:
      return eval(Process::input(f->name, f->var, cp), f->a);
    case FKind::OutPrefix: {
      if (cp->kind != PKind::Output || !(cp->name == f->name)) return Verdict::fails();
      return v_and(eval(cp->a, f->a), eval(cp->b, f->b));
    }
    case FKind::OutAdjoint:
      return eval(Process::output(f->name, cp, Process::nil()), f->a);
    case FKind::Par: return eval_par(cp, f);
    case FKind::Guarantee: return eval_guarantee(cp, f);
    case FKind::Reveal: return eval_reveal(cp, f);
    case FKind::Hide:
      return eval(Process::res(f->name, cp), f->a);
    case FKind::FreshName: {
      std::vector<std::string> avoid = fn(f->a);
      for (auto& n : names_of(cp)) avoid.push_back(n);
      Name w{fresh_ident(avoid, "w")};
      return eval(cp, formula_rename_name(f->a, f->name, w));
    }
    case FKind::FreshVar: {
      std::vector<std::string> avoid = fpv(f->a);
      for (auto& v : cp->fv) avoid.push_back(v);
      for (auto& v : bv(cp)) avoid.push_back(v);
      ProcVar w{fresh_ident(avoid, "W")};
      return eval(cp, formula_rename_var(f->a, f->var, w));
    }
    case FKind::NotFree:
      if (has_free_name(cp, f->name)) return Verdict::fails();
      return eval(cp, f->a);
    case FKind::NoBound:
      if (!restriction_free(cp)) return Verdict::fails();
      return eval(cp, f->a);
    case FKind::Neq:
      return f->name == f->name2 ? Verdict::fails() : Verdict::holds();
    case FKind::WeakEps:
    case FKind::WeakIn:
    case FKind::WeakBoxIn:
    case FKind::WeakOut:
      return eval_weak(cp, f);
    case FKind::Mu: return eval_mu(cp, f);
  }
  return Verdict::unknown();
}

Verdict Checker::eval_in_prefix(const ProcPtr& cp, const FormPtr& f) {
  if (cp->kind != PKind::Input || !(cp->name == f->name)) return Verdict::fails();
  if (!(cp->var == f->var) && has_free_var(cp->a, f->var))
    return Verdict::fails();  // the required binder name is taken in the body
  ProcPtr body = rename_free_var(cp->a, cp->var, f->var);
  return eval(body, f->a);
}

// Transition targets carry the extruded names free, and the relation is
// closed under renaming them; enumerate the variants whose names appear in
// the continuation formula, plus the engine's representative.
std::vector<ProcPtr> extrusion_variants(const Transition& t,
                                        const std::vector<std::string>& relevant) {
  std::vector<ProcPtr> out{t.target};
  size_t k = t.action.extruded.size();
  if (k == 0 || relevant.empty()) return out;
  std::vector<std::string> blocked = t.target->fn;
  for (auto& n : t.action.payload->fn) blocked.push_back(n);
  blocked.push_back(t.action.subject.id);
  for (auto& e : t.action.extruded) blocked.push_back(e.id);

  std::set<std::string> seen{alpha_key(canonical(t.target))};
  std::function<void(size_t, ProcPtr, std::vector<std::string>)> go =
      [&](size_t i, ProcPtr cur, std::vector<std::string> used) {
        if (i == k) {
          ProcPtr c = canonical(cur);
          if (seen.insert(alpha_key(c)).second) out.push_back(c);
          return;
        }
        go(i + 1, cur, used);  // keep this name
        for (auto& r : relevant) {
          if (std::find(blocked.begin(), blocked.end(), r) != blocked.end()) continue;
          if (std::find(used.begin(), used.end(), r) != used.end()) continue;
          auto used2 = used;
          used2.push_back(r);
          go(i + 1, rename_free_name(cur, t.action.extruded[i], Name{r}), used2);
        }
      };
  go(0, t.target, {});
  return out;
}

Verdict Checker::eval_dia_out(const ProcPtr& cp, const FormPtr& f) {
  ExistsAcc acc;
  std::vector<std::string> relevant = fn(f->b);
  for (auto& t : step_any(cp, StepQuery::out())) {
    if (!(t.action.subject == f->name)) continue;
    ProcPtr wrapped = t.action.payload;
    for (auto it = t.action.extruded.rbegin(); it != t.action.extruded.rend(); ++it)
      wrapped = Process::res(*it, wrapped);
    Verdict vp = eval(wrapped, f->a);
    if (vp.outcome == Outcome::Fails) {
      acc.add(vp);
      continue;
    }
    for (auto& tgt : extrusion_variants(t, relevant)) {
      Verdict v = v_and(vp, eval(tgt, f->b));
      if (v.outcome == Outcome::Holds) return Verdict::holds(print(t.action));
      acc.add(v);
    }
  }
  return acc.result();
}

Verdict Checker::eval_dia_in(const ProcPtr& cp, const FormPtr& f) {
  bool capable = input_capable_at(cp, f->name);
  if (auto e = as_process(f->a)) {
    ProcPtr en = canonical(*e);
    if (!restriction_free(en)) return Verdict::fails();  // no receivable payload
    if (!capable) return Verdict::fails();
    ExistsAcc acc;
    for (auto& t : step_any(cp, StepQuery::in(f->name, en))) {
      Verdict v = eval(t.target, f->b);
      if (v.outcome == Outcome::Holds) return Verdict::holds(print(en));
      acc.add(v);
    }
    return acc.result();
  }
  if (!capable) return Verdict::fails();
  // Payload-independent residuals let a definite failure through.
  if (inputs_ignore_payload(cp, f->name)) {
    ExistsAcc res;
    for (auto& t : step_any(cp, StepQuery::in(f->name, Process::nil())))
      res.add(eval(t.target, f->b));
    Verdict v2 = res.result();
    if (v2.outcome == Outcome::Fails) return v2;
  }
  for (auto& cand : payload_pool(cp, f->a)) {
    if (eval(cand, f->a).outcome != Outcome::Holds) continue;
    for (auto& t : step_any(cp, StepQuery::in(f->name, cand))) {
      if (eval(t.target, f->b).outcome == Outcome::Holds)
        return Verdict::holds(print(cand));
    }
  }
  return Verdict::unknown();
}

Verdict Checker::eval_box_in(const ProcPtr& cp, const FormPtr& f) {
  if (auto e = as_process(f->a)) {
    ProcPtr en = canonical(*e);
    if (!restriction_free(en)) return Verdict::fails();  // empty receivable domain
    auto ts = step_any(cp, StepQuery::in(f->name, en));
    if (ts.empty()) return Verdict::fails(print(en));
    ExistsAcc acc;
    for (auto& t : ts) acc.add(eval(t.target, f->b));
    return acc.result();
  }
  // Universal over an unbounded payload set: refutation only.
  for (auto& cand : payload_pool(cp, f->a)) {
    if (eval(cand, f->a).outcome != Outcome::Holds) continue;
    auto ts = step_any(cp, StepQuery::in(f->name, cand));
    if (ts.empty()) return Verdict::fails(print(cand));
    ExistsAcc acc;
    for (auto& t : ts) acc.add(eval(t.target, f->b));
    if (acc.result().outcome == Outcome::Fails) return Verdict::fails(print(cand));
  }
  return Verdict::unknown();
}

Verdict Checker::eval_guarantee(const ProcPtr& cp, const FormPtr& f) {
  if (auto e = as_process(f->a)) {
    Verdict v = eval(Process::par(cp, *e), f->b);
    v.witness = print(*e);
    return v;
  }
  for (auto& cand : payload_pool(cp, f->a)) {
    if (eval(cand, f->a).outcome != Outcome::Holds) continue;
    if (eval(Process::par(cp, cand), f->b).outcome == Outcome::Fails)
      return Verdict::fails(print(cand));
  }
  return Verdict::unknown();
}

Verdict Checker::eval_par(const ProcPtr& cp, const FormPtr& f) {
  auto comps = components(cp);
  size_t k = comps.size();
  if (k > 16) throw std::invalid_argument("par split: too many parallel components");
  ExistsAcc acc;
  std::set<std::string> seenSplits;
  for (size_t mask = 0; mask < (size_t{1} << k); mask++) {
    std::vector<ProcPtr> l, r;
    for (size_t i = 0; i < k; i++)
      ((mask >> i) & 1 ? l : r).push_back(comps[i]);
    ProcPtr q1 = par_of(l), q2 = par_of(r);
    std::string skey = alpha_key(q1);
    if (!seenSplits.insert(skey).second) continue;
    Verdict v = v_and(eval(q1, f->a), eval(q2, f->b));
    if (v.outcome == Outcome::Holds)
      return Verdict::holds(print(q1) + "  ||  " + print(q2));
    acc.add(v);
  }
  return acc.result();
}

Verdict Checker::eval_reveal(const ProcPtr& cp, const FormPtr& f) {
  ExistsAcc acc;
  for (auto& q : reveal_candidates(cp, f->name)) {
    Verdict v = eval(q, f->a);
    if (v.outcome == Outcome::Holds) return Verdict::holds(print(q));
    acc.add(v);
  }
  return acc.result();
}

namespace {

// Recognizes mu X. (B or <tau>X) with X not free in B: reachability of B
// along internal steps, which a complete tau closure decides.
std::optional<FormPtr> eventually_pattern(const FormPtr& f) {
  if (f->kind != FKind::Mu) return std::nullopt;
  const FormPtr& body = f->a;
  // or-encoding: not(and(not L, not R))
  if (body->kind != FKind::Not || body->a->kind != FKind::And) return std::nullopt;
  const FormPtr& l = body->a->a;
  const FormPtr& r = body->a->b;
  if (l->kind != FKind::Not || r->kind != FKind::Not) return std::nullopt;
  auto isTauLoop = [&](const FormPtr& g) {
    return g->kind == FKind::DiaTau && g->a->kind == FKind::PropVar && g->a->var == f->var;
  };
  auto notFreeIn = [&](const FormPtr& g) {
    auto vars = fpv(g);
    return std::find(vars.begin(), vars.end(), f->var.id) == vars.end();
  };
  if (isTauLoop(r->a) && notFreeIn(l->a)) return l->a;
  if (isTauLoop(l->a) && notFreeIn(r->a)) return r->a;
  return std::nullopt;
}

}  // namespace

Verdict Checker::eval_weak(const ProcPtr& cp, const FormPtr& f) {
  auto reach = weak_reach_any(cp, budget_.tau_fuel);

  if (f->kind == FKind::WeakEps) {
    ExistsAcc acc;
    acc.incomplete = reach.truncated;
    for (auto& q : reach.states) {
      Verdict v = eval(q, f->a);
      if (v.outcome == Outcome::Holds) return Verdict::holds(print(q));
      acc.add(v);
    }
    return acc.result();
  }

  // Existential weak modality evaluated at every state of the closure.
  auto weak_dia = [&](const FormPtr& payloadF, const FormPtr& contF, bool outMode) -> Verdict {
    ExistsAcc acc;
    acc.incomplete = reach.truncated;
    for (auto& q1 : reach.states) {
      if (outMode) {
        std::vector<std::string> relevant = fn(contF);
        for (auto& t : step_any(q1, StepQuery::out())) {
          if (!(t.action.subject == f->name)) continue;
          ProcPtr wrapped = t.action.payload;
          for (auto it = t.action.extruded.rbegin(); it != t.action.extruded.rend(); ++it)
            wrapped = Process::res(*it, wrapped);
          Verdict vp = eval(wrapped, payloadF);
          if (vp.outcome == Outcome::Fails) {
            acc.add(vp);
            continue;
          }
          for (auto& tgt : extrusion_variants(t, relevant)) {
            auto after = weak_reach_any(tgt, budget_.tau_fuel);
            ExistsAcc acc2;
            acc2.incomplete = after.truncated;
            for (auto& q2 : after.states) acc2.add(eval(q2, contF));
            Verdict v = v_and(vp, acc2.result());
            if (v.outcome == Outcome::Holds) return Verdict::holds(print(t.action));
            acc.add(v);
          }
        }
      } else if (auto e = as_process(payloadF)) {
        ProcPtr en = canonical(*e);
        if (!restriction_free(en)) return Verdict::fails();
        for (auto& t : step_any(q1, StepQuery::in(f->name, en))) {
          auto after = weak_reach_any(t.target, budget_.tau_fuel);
          ExistsAcc acc2;
          acc2.incomplete = after.truncated;
          for (auto& q2 : after.states) acc2.add(eval(q2, contF));
          Verdict v = acc2.result();
          if (v.outcome == Outcome::Holds) return Verdict::holds(print(en));
          acc.add(v);
        }
      } else {
        for (auto& cand : payload_pool(cp, payloadF)) {
          if (eval(cand, payloadF).outcome != Outcome::Holds) continue;
          for (auto& t : step_any(q1, StepQuery::in(f->name, cand))) {
            auto after = weak_reach_any(t.target, budget_.tau_fuel);
            for (auto& q2 : after.states)
              if (eval(q2, contF).outcome == Outcome::Holds)
                return Verdict::holds(print(cand));
            if (after.truncated) acc.sawUnknown = true;
          }
        }
        acc.sawUnknown = true;  // pool search cannot certify failure
      }
    }
    return acc.result();
  };

  switch (f->kind) {
    case FKind::WeakIn:
      return weak_dia(f->a, f->b, false);
    case FKind::WeakOut:
      return weak_dia(f->a, f->b, true);
    case FKind::WeakBoxIn: {
      if (auto e = as_process(f->a)) {
        ProcPtr en = canonical(*e);
        if (!restriction_free(en)) return Verdict::fails();
        // One representative decides the whole payload class.
        return weak_dia(f->a, f->b, false);
      }
      for (auto& cand : payload_pool(cp, f->a)) {
        if (eval(cand, f->a).outcome != Outcome::Holds) continue;
        // Can every state reached weakly receive cand into contF?
        ExistsAcc acc;
        acc.incomplete = reach.truncated;
        for (auto& q1 : reach.states) {
          for (auto& t : step_any(q1, StepQuery::in(f->name, cand))) {
            auto after = weak_reach_any(t.target, budget_.tau_fuel);
            ExistsAcc acc2;
            acc2.incomplete = after.truncated;
            for (auto& q2 : after.states) acc2.add(eval(q2, f->b));
            acc.add(acc2.result());
          }
        }
        if (acc.result().outcome == Outcome::Fails) return Verdict::fails(print(cand));
      }
      return Verdict::unknown();
    }
    default:
      return Verdict::unknown();
  }
}

Verdict Checker::eval_mu(const ProcPtr& cp, const FormPtr& f) {
  if (auto b = eventually_pattern(f)) {
    // Reduce to reachability of b along the tau closure.
    return eval_weak(cp, Formula::weak_eps(*b));
  }
  FormPtr unfolded = Formula::falsity();
  std::string prevKey = formula_key(unfolded);
  for (int i = 1; i <= budget_.mu_fuel; i++) {
    unfolded = formula_subst(f->a, f->var, unfolded);
    std::string key = formula_key(unfolded);
    Verdict v = eval(cp, unfolded);
    if (v.outcome == Outcome::Holds)
      return Verdict::holds("unfolding " + std::to_string(i));
    if (key == prevKey) return v;  // syntactic fixpoint: the verdict settles
    prevKey = key;
  }
  return Verdict::unknown();
}

}  // namespace hopi
