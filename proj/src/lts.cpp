#include "hopi/lts.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace hopi {

Action Action::in(Name a, ProcPtr e) {
  Action act;
  act.kind = In;
  act.subject = std::move(a);
  act.payload = std::move(e);
  return act;
}

Action Action::out(Name a, std::vector<Name> ext, ProcPtr e) {
  Action act;
  act.kind = Out;
  act.subject = std::move(a);
  act.extruded = std::move(ext);
  act.payload = std::move(e);
  return act;
}

std::string print(const Action& act) {
  switch (act.kind) {
    case Action::Tau: return "tau";
    case Action::In: return act.subject.id + "<" + print(act.payload) + ">";
    case Action::Out: {
      std::string s;
      if (!act.extruded.empty()) {
        s += "(nu";
        for (size_t i = 0; i < act.extruded.size(); i++)
          s += (i ? "," : " ") + act.extruded[i].id;
        s += ") ";
      }
      s += "'" + act.subject.id + "<" + print(act.payload) + ">";
      return s;
    }
  }
  return "";
}

namespace {

struct OutTrans {
  Name subj;
  std::vector<Name> extruded;
  ProcPtr payload;
  ProcPtr target;
};

// An input capability: subject plus the residual as a function of the
// received payload, realized by the binder/body pair under its context.
struct InCap {
  Name subj;
  ProcVar binder;
  ProcPtr body;
  // Rebuild the whole residual given the consumed prefix's replacement.
  std::vector<int> path;  // position of the Input node
};

void collect_inputs(const ProcPtr& t, std::vector<int>& path, std::vector<InCap>& out,
                    const std::vector<std::string>& blocked) {
  switch (t->kind) {
    case PKind::Nil:
    case PKind::Var:
    case PKind::Output: return;
    case PKind::Input:
      if (std::find(blocked.begin(), blocked.end(), t->name.id) == blocked.end())
        out.push_back({t->name, t->var, t->a, path});
      return;
    case PKind::Par: {
      path.push_back(0);
      collect_inputs(t->a, path, out, blocked);
      path.back() = 1;
      collect_inputs(t->b, path, out, blocked);
      path.pop_back();
      return;
    }
    case PKind::Res: {
      auto b2 = blocked;
      b2.push_back(t->name.id);
      path.push_back(0);
      collect_inputs(t->a, path, out, b2);
      path.pop_back();
      return;
    }
  }
}

std::vector<InCap> input_caps(const ProcPtr& t) {
  std::vector<InCap> out;
  std::vector<int> path;
  collect_inputs(t, path, out, {});
  return out;
}

// Residual of receiving e at the input capability `cap` inside `whole`.
// Restriction binders on the path must not capture free names of e; they
// are alpha-renamed when they would.
ProcPtr fire_input(const ProcPtr& whole, const InCap& cap, const ProcPtr& e) {
  // Walk down the path; rename clashing restriction binders on the way.
  std::function<ProcPtr(const ProcPtr&, size_t)> go =
      [&](const ProcPtr& t, size_t i) -> ProcPtr {
    if (i == cap.path.size()) {
      // t is the input node.
      return substitute(t->a, t->var, e);
    }
    int d = cap.path[i];
    switch (t->kind) {
      case PKind::Par:
        return d == 0 ? Process::par(go(t->a, i + 1), t->b)
                      : Process::par(t->a, go(t->b, i + 1));
      case PKind::Res: {
        ProcPtr cur = t;
        if (has_free_name(e, cur->name)) {
          std::vector<std::string> avoid = cur->a->fn;
          for (auto& n : e->fn) avoid.push_back(n);
          Name nb{fresh_ident(avoid, cur->name.id)};
          cur = Process::res(nb, rename_free_name(cur->a, cur->name, nb));
          // The path is positional, so it survives the rename.
        }
        return Process::res(cur->name, go(cur->a, i + 1));
      }
      default:
        throw std::logic_error("fire_input: unexpected node on path");
    }
  };
  return go(whole, 0);
}

std::vector<std::string> all_idents(const ProcPtr& t) {
  auto v = names_of(t);
  for (auto& x : t->fv) v.push_back(x);
  for (auto& x : bv(t)) v.push_back(x);
  return v;
}

// Rename an extruded name everywhere it appears in an output transition.
OutTrans rename_extruded(const OutTrans& o, const Name& from, const Name& to) {
  OutTrans r = o;
  for (auto& n : r.extruded)
    if (n == from) n = to;
  r.payload = rename_free_name(r.payload, from, to);
  r.target = rename_free_name(r.target, from, to);
  return r;
}

std::vector<OutTrans> outs_of(const ProcPtr& t);
std::vector<ProcPtr> taus_of(const ProcPtr& t);

// Lift transitions of one parallel component: other stays put on the
// given side. Extruded names are freshened so they miss fn(other).
std::vector<OutTrans> lift_out_par(const std::vector<OutTrans>& os, const ProcPtr& other,
                                   bool otherOnRight) {
  std::vector<OutTrans> out;
  for (auto o : os) {
    for (auto& b : o.extruded) {
      if (has_free_name(other, b)) {
        std::vector<std::string> avoid = all_idents(o.payload);
        auto more = all_idents(o.target);
        avoid.insert(avoid.end(), more.begin(), more.end());
        auto oth = other->fn;
        avoid.insert(avoid.end(), oth.begin(), oth.end());
        o = rename_extruded(o, b, Name{fresh_ident(avoid, b.id)});
      }
    }
    o.target = otherOnRight ? Process::par(o.target, other) : Process::par(other, o.target);
    out.push_back(o);
  }
  return out;
}

// Communication: left does the output, right receives (and symmetrically).
void com_pairs(const ProcPtr& outSide, const ProcPtr& inSide, bool outOnLeft,
               std::vector<ProcPtr>& targets) {
  auto os = outs_of(outSide);
  if (os.empty()) return;
  auto caps = input_caps(inSide);
  for (const auto& o : os) {
    // The input side condition: payloads carry no bound names. A payload
    // whose canonical form still has a restriction cannot synchronize.
    ProcPtr epay = canonical(o.payload);
    if (!restriction_free(epay)) continue;
    OutTrans oo = o;
    for (auto& b : oo.extruded) {
      if (has_free_name(inSide, b)) {
        std::vector<std::string> avoid = all_idents(oo.payload);
        auto more = all_idents(oo.target);
        avoid.insert(avoid.end(), more.begin(), more.end());
        auto oth = inSide->fn;
        avoid.insert(avoid.end(), oth.begin(), oth.end());
        oo = rename_extruded(oo, b, Name{fresh_ident(avoid, b.id)});
      }
    }
    epay = canonical(oo.payload);
    if (!restriction_free(epay)) continue;
    for (const auto& cap : caps) {
      if (!(cap.subj == oo.subj)) continue;
      ProcPtr resid = fire_input(inSide, cap, epay);
      ProcPtr inner = outOnLeft ? Process::par(oo.target, resid)
                                : Process::par(resid, oo.target);
      for (auto it = oo.extruded.rbegin(); it != oo.extruded.rend(); ++it)
        inner = Process::res(*it, inner);
      targets.push_back(inner);
    }
  }
}

std::vector<ProcPtr> taus_of(const ProcPtr& t) {
  std::vector<ProcPtr> out;
  switch (t->kind) {
    case PKind::Nil:
    case PKind::Var:
    case PKind::Input:
    case PKind::Output: return out;
    case PKind::Par: {
      for (auto& q : taus_of(t->a)) out.push_back(Process::par(q, t->b));
      for (auto& q : taus_of(t->b)) out.push_back(Process::par(t->a, q));
      com_pairs(t->a, t->b, true, out);
      com_pairs(t->b, t->a, false, out);
      return out;
    }
    case PKind::Res: {
      for (auto& q : taus_of(t->a)) out.push_back(Process::res(t->name, q));
      return out;
    }
  }
  return out;
}

std::vector<OutTrans> outs_of(const ProcPtr& t) {
  std::vector<OutTrans> out;
  switch (t->kind) {
    case PKind::Nil:
    case PKind::Var:
    case PKind::Input: return out;
    case PKind::Output:
      out.push_back({t->name, {}, t->a, t->b});
      return out;
    case PKind::Par: {
      for (auto& o : lift_out_par(outs_of(t->a), t->b, true)) out.push_back(o);
      for (auto& o : lift_out_par(outs_of(t->b), t->a, false)) out.push_back(o);
      return out;
    }
    case PKind::Res: {
      Name c = t->name;
      for (auto o : outs_of(t->a)) {
        if (o.subj == c) continue;  // the channel itself is restricted
        bool inExtruded =
            std::any_of(o.extruded.begin(), o.extruded.end(), [&](const Name& n) { return n == c; });
        if (inExtruded) continue;  // cannot happen after freshening, but safe
        if (has_free_name(o.payload, c)) {
          // OPEN: extrude the binder.
          o.extruded.insert(o.extruded.begin(), c);
          out.push_back(o);
        } else {
          // RES: the binder stays on the target.
          o.target = Process::res(c, o.target);
          out.push_back(o);
        }
      }
      return out;
    }
  }
  return out;
}

std::string out_key(const OutTrans& o) {
  // The extruded names tie the payload to the target; key them jointly so
  // alpha-variants of the extrusion collapse.
  ProcPtr joint = Process::output(o.subj, o.payload, o.target);
  for (auto it = o.extruded.rbegin(); it != o.extruded.rend(); ++it)
    joint = Process::res(*it, joint);
  return o.subj.id + "!" + std::to_string(o.extruded.size()) + "!" +
         canonical_key(joint);
}

}  // namespace

std::vector<Transition> step(const ProcPtr& p, const StepQuery& q) {
  if (!is_closed(p)) throw std::invalid_argument("step: process must be closed");
  return step_any(p, q);
}

std::vector<Transition> step_any(const ProcPtr& p, const StepQuery& q) {
  ProcPtr src = canonical(p);
  std::vector<Transition> result;
  switch (q.kind) {
    case StepQuery::Tau: {
      std::set<std::string> seen;
      for (auto& t : taus_of(src)) {
        ProcPtr ct = canonical(t);
        if (seen.insert(alpha_key(ct)).second)
          result.push_back({src, Action::tau(), ct});
      }
      return result;
    }
    case StepQuery::Out: {
      std::set<std::string> seen;
      for (auto& o : outs_of(src)) {
        if (!seen.insert(out_key(o)).second) continue;
        result.push_back({src, Action::out(o.subj, o.extruded, canonical(o.payload)),
                          canonical(o.target)});
      }
      return result;
    }
    case StepQuery::In: {
      if (!q.payload) throw std::invalid_argument("step: input query needs a payload");
      if (!bn(q.payload).empty())
        throw std::invalid_argument("step: input payload must have no bound names");
      std::set<std::string> seen;
      for (auto& cap : input_caps(src)) {
        if (!(cap.subj == q.subject)) continue;
        ProcPtr resid = canonical(fire_input(src, cap, q.payload));
        if (seen.insert(alpha_key(resid)).second)
          result.push_back({src, Action::in(q.subject, q.payload), resid});
      }
      return result;
    }
  }
  return result;
}

std::vector<Name> input_subjects(const ProcPtr& p) {
  std::vector<Name> out;
  std::set<std::string> seen;
  for (auto& cap : input_caps(canonical(p)))
    if (seen.insert(cap.subj.id).second) out.push_back(cap.subj);
  std::sort(out.begin(), out.end());
  return out;
}

bool inputs_ignore_payload(const ProcPtr& p, const Name& a) {
  for (auto& cap : input_caps(canonical(p)))
    if (cap.subj == a && has_free_var(cap.body, cap.binder)) return false;
  return true;
}

ReachResult weak_reach(const ProcPtr& p, int fuel) {
  if (!is_closed(p)) throw std::invalid_argument("weak_reach: process must be closed");
  return weak_reach_any(p, fuel);
}

ReachResult weak_reach_any(const ProcPtr& p, int fuel) {
  ReachResult r;
  ProcPtr start = canonical(p);
  std::map<std::string, ProcPtr> seen;
  seen[alpha_key(start)] = start;
  std::vector<ProcPtr> frontier{start};
  r.states.push_back(start);
  for (int level = 0; level < fuel && !frontier.empty(); level++) {
    std::vector<ProcPtr> next;
    for (auto& s : frontier) {
      for (auto& t : step_any(s, StepQuery::tau())) {
        auto key = alpha_key(t.target);
        if (seen.emplace(key, t.target).second) {
          next.push_back(t.target);
          r.states.push_back(t.target);
        }
      }
    }
    frontier = std::move(next);
  }
  // Complete iff every remaining frontier state only leads back into the set.
  for (auto& s : frontier) {
    for (auto& t : step_any(s, StepQuery::tau())) {
      if (!seen.count(alpha_key(t.target))) {
        r.truncated = true;
        return r;
      }
    }
  }
  return r;
}

std::set<std::string> barbs(const ProcPtr& p, bool weak, int fuel) {
  std::vector<ProcPtr> states;
  if (weak) {
    states = weak_reach(p, fuel).states;
  } else {
    states = {canonical(p)};
  }
  std::set<std::string> out;
  for (auto& s : states) {
    for (auto& a : input_subjects(s)) out.insert(a.id);
    for (auto& o : step(s, StepQuery::out())) out.insert("'" + o.action.subject.id);
  }
  return out;
}

}  // namespace hopi
