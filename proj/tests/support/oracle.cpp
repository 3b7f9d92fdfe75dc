#include "support/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

#include "hopi/translate.hpp"

namespace oracle {

using hopi::FKind;
using hopi::PKind;
using hopi::Process;
using hopi::ProcVar;

namespace {

// Rebuild `whole` with the subterm at `path` replaced.
ProcPtr replace(const ProcPtr& p, const std::vector<int>& path, size_t i,
                const ProcPtr& sub) {
  if (i == path.size()) return sub;
  int d = path[i];
  switch (p->kind) {
    case PKind::Input:
      return Process::input(p->name, p->var, replace(p->a, path, i + 1, sub));
    case PKind::Output:
      return d == 0 ? Process::output(p->name, replace(p->a, path, i + 1, sub), p->b)
                    : Process::output(p->name, p->a, replace(p->b, path, i + 1, sub));
    case PKind::Par:
      return d == 0 ? Process::par(replace(p->a, path, i + 1, sub), p->b)
                    : Process::par(p->a, replace(p->b, path, i + 1, sub));
    case PKind::Res:
      return Process::res(p->name, replace(p->a, path, i + 1, sub));
    default:
      throw std::logic_error("oracle replace: bad path");
  }
}

void local_rewrites(const ProcPtr& t, std::vector<ProcPtr>& out) {
  using hopi::has_free_name;
  // unit introduction applies everywhere
  out.push_back(Process::par(t, Process::nil()));
  switch (t->kind) {
    case PKind::Nil:
      out.push_back(Process::res(Name{"zz"}, Process::nil()));
      break;
    case PKind::Par: {
      out.push_back(Process::par(t->b, t->a));  // commutativity
      if (t->a->kind == PKind::Par)
        out.push_back(Process::par(t->a->a, Process::par(t->a->b, t->b)));
      if (t->b->kind == PKind::Par)
        out.push_back(Process::par(Process::par(t->a, t->b->a), t->b->b));
      if (t->b->kind == PKind::Nil) out.push_back(t->a);  // unit
      // scope intrusion: P|(nu a)Q -> (nu a)(P|Q)
      if (t->b->kind == PKind::Res) {
        Name a = t->b->name;
        if (!has_free_name(t->a, a)) {
          out.push_back(Process::res(a, Process::par(t->a, t->b->a)));
        } else {
          std::vector<std::string> avoid = hopi::names_of(t);
          Name fresh{hopi::fresh_ident(avoid, a.id)};
          out.push_back(Process::res(
              fresh, Process::par(t->a, hopi::rename_free_name(t->b->a, a, fresh))));
        }
      }
      break;
    }
    case PKind::Res: {
      if (t->a->kind == PKind::Nil) out.push_back(Process::nil());  // (nu a)0 = 0
      if (t->a->kind == PKind::Res)
        out.push_back(Process::res(t->a->name, Process::res(t->name, t->a->a)));
      if (t->a->kind == PKind::Par && !has_free_name(t->a->a, t->name))
        out.push_back(Process::par(t->a->a, Process::res(t->name, t->a->b)));
      break;
    }
    default:
      break;
  }
}

void all_rewrites(const ProcPtr& whole, const ProcPtr& t, std::vector<int>& path,
                  std::vector<ProcPtr>& out) {
  std::vector<ProcPtr> local;
  local_rewrites(t, local);
  for (auto& l : local) out.push_back(replace(whole, path, 0, l));
  auto descend = [&](const ProcPtr& child, int d) {
    path.push_back(d);
    all_rewrites(whole, child, path, out);
    path.pop_back();
  };
  switch (t->kind) {
    case PKind::Input: descend(t->a, 0); break;
    case PKind::Output:
      descend(t->a, 0);
      descend(t->b, 1);
      break;
    case PKind::Par:
      descend(t->a, 0);
      descend(t->b, 1);
      break;
    case PKind::Res: descend(t->a, 0); break;
    default: break;
  }
}

}  // namespace

std::vector<ProcPtr> rewrites1(const ProcPtr& p) {
  std::vector<ProcPtr> out;
  std::vector<int> path;
  all_rewrites(p, p, path, out);
  return out;
}

std::set<std::string> closure(const ProcPtr& p, int depth, int sizeCap) {
  std::set<std::string> seen{hopi::alpha_key(p)};
  std::deque<std::pair<ProcPtr, int>> queue{{p, 0}};
  while (!queue.empty()) {
    auto [t, d] = queue.front();
    queue.pop_front();
    if (d >= depth) continue;
    for (auto& r : rewrites1(t)) {
      if (hopi::term_size(r) > sizeCap) continue;
      auto key = hopi::alpha_key(r);
      if (seen.insert(key).second) queue.push_back({r, d + 1});
    }
  }
  return seen;
}

bool congruent_by_rewriting(const ProcPtr& p, const ProcPtr& q) {
  int cap = std::max(hopi::term_size(p), hopi::term_size(q)) + 6;
  auto cp = closure(p, 3, cap);
  auto cq = closure(q, 3, cap);
  if (cp.size() > cq.size()) std::swap(cp, cq);
  for (auto& k : cp)
    if (cq.count(k)) return true;
  return false;
}

std::vector<ProcPtr> class_members(const ProcPtr& p, int depth, int sizeCap) {
  std::vector<ProcPtr> out{p};
  std::set<std::string> seen{hopi::alpha_key(p)};
  std::deque<std::pair<ProcPtr, int>> queue{{p, 0}};
  while (!queue.empty()) {
    auto [t, d] = queue.front();
    queue.pop_front();
    if (d >= depth) continue;
    for (auto& r : rewrites1(t)) {
      if (hopi::term_size(r) > sizeCap) continue;
      auto key = hopi::alpha_key(r);
      if (seen.insert(key).second) {
        out.push_back(r);
        queue.push_back({r, d + 1});
      }
    }
  }
  return out;
}

// --- direct transition engine -------------------------------------------

namespace {

NaiveOut rename_out(const NaiveOut& o, const Name& from, const Name& to) {
  NaiveOut r = o;
  for (auto& n : r.extruded)
    if (n == from) n = to;
  r.payload = hopi::rename_free_name(r.payload, from, to);
  r.target = hopi::rename_free_name(r.target, from, to);
  return r;
}

std::vector<std::string> idents(const ProcPtr& t) {
  auto v = hopi::names_of(t);
  for (auto& x : t->fv) v.push_back(x);
  return v;
}

}  // namespace

std::vector<NaiveOut> naive_outs(const ProcPtr& p) {
  std::vector<NaiveOut> out;
  switch (p->kind) {
    case PKind::Output:
      out.push_back({p->name, {}, p->a, p->b});
      break;
    case PKind::Par: {
      for (auto o : naive_outs(p->a)) {
        for (auto& b : o.extruded) {
          if (hopi::has_free_name(p->b, b)) {
            auto avoid = idents(o.payload);
            auto more = idents(o.target);
            avoid.insert(avoid.end(), more.begin(), more.end());
            auto oth = p->b->fn;
            avoid.insert(avoid.end(), oth.begin(), oth.end());
            o = rename_out(o, b, Name{hopi::fresh_ident(avoid, b.id)});
          }
        }
        o.target = Process::par(o.target, p->b);
        out.push_back(o);
      }
      for (auto o : naive_outs(p->b)) {
        for (auto& b : o.extruded) {
          if (hopi::has_free_name(p->a, b)) {
            auto avoid = idents(o.payload);
            auto more = idents(o.target);
            avoid.insert(avoid.end(), more.begin(), more.end());
            auto oth = p->a->fn;
            avoid.insert(avoid.end(), oth.begin(), oth.end());
            o = rename_out(o, b, Name{hopi::fresh_ident(avoid, b.id)});
          }
        }
        o.target = Process::par(p->a, o.target);
        out.push_back(o);
      }
      break;
    }
    case PKind::Res: {
      Name c = p->name;
      for (auto o : naive_outs(p->a)) {
        if (o.subj == c) continue;
        bool isExtruded = std::any_of(o.extruded.begin(), o.extruded.end(),
                                      [&](const Name& n) { return n == c; });
        if (isExtruded) continue;
        if (hopi::has_free_name(o.payload, c)) {
          o.extruded.insert(o.extruded.begin(), c);
          out.push_back(o);
        } else {
          o.target = Process::res(c, o.target);
          out.push_back(o);
        }
      }
      break;
    }
    default:
      break;
  }
  return out;
}

std::vector<ProcPtr> naive_ins(const ProcPtr& p, const Name& subj, const ProcPtr& payload) {
  std::vector<ProcPtr> out;
  switch (p->kind) {
    case PKind::Input:
      if (p->name == subj) out.push_back(hopi::substitute(p->a, p->var, payload));
      break;
    case PKind::Par: {
      for (auto& t : naive_ins(p->a, subj, payload)) out.push_back(Process::par(t, p->b));
      for (auto& t : naive_ins(p->b, subj, payload)) out.push_back(Process::par(p->a, t));
      break;
    }
    case PKind::Res: {
      ProcPtr cur = p;
      if (cur->name == subj) break;  // the channel is private
      if (hopi::has_free_name(payload, cur->name)) {
        auto avoid = idents(cur->a);
        auto more = idents(payload);
        avoid.insert(avoid.end(), more.begin(), more.end());
        Name fresh{hopi::fresh_ident(avoid, cur->name.id)};
        cur = Process::res(fresh, hopi::rename_free_name(cur->a, cur->name, fresh));
      }
      for (auto& t : naive_ins(cur->a, subj, payload))
        out.push_back(Process::res(cur->name, t));
      break;
    }
    default:
      break;
  }
  return out;
}

std::vector<ProcPtr> naive_taus(const ProcPtr& p) {
  std::vector<ProcPtr> out;
  switch (p->kind) {
    case PKind::Par: {
      for (auto& t : naive_taus(p->a)) out.push_back(Process::par(t, p->b));
      for (auto& t : naive_taus(p->b)) out.push_back(Process::par(p->a, t));
      auto com = [&](const ProcPtr& outSide, const ProcPtr& inSide, bool outLeft) {
        for (auto o : naive_outs(outSide)) {
          for (auto& b : o.extruded) {
            if (hopi::has_free_name(inSide, b)) {
              auto avoid = idents(o.payload);
              auto more = idents(o.target);
              avoid.insert(avoid.end(), more.begin(), more.end());
              auto oth = inSide->fn;
              avoid.insert(avoid.end(), oth.begin(), oth.end());
              o = rename_out(o, b, Name{hopi::fresh_ident(avoid, b.id)});
            }
          }
          if (!hopi::bn(o.payload).empty()) {
            // receivable payloads carry no binders; try a congruent
            // representative found by rewriting
            ProcPtr found = nullptr;
            for (auto& m : class_members(o.payload, 3, hopi::term_size(o.payload) + 6)) {
              if (hopi::bn(m).empty()) {
                found = m;
                break;
              }
            }
            if (!found) continue;
            o.payload = found;
          }
          for (auto& resid : naive_ins(inSide, o.subj, o.payload)) {
            ProcPtr inner = outLeft ? Process::par(o.target, resid)
                                    : Process::par(resid, o.target);
            for (auto it = o.extruded.rbegin(); it != o.extruded.rend(); ++it)
              inner = Process::res(*it, inner);
            out.push_back(inner);
          }
        }
      };
      com(p->a, p->b, true);
      com(p->b, p->a, false);
      break;
    }
    case PKind::Res:
      for (auto& t : naive_taus(p->a)) out.push_back(Process::res(p->name, t));
      break;
    default:
      break;
  }
  return out;
}

// --- two-valued satisfaction on the exact fragment -----------------------

bool in_exact_fragment(const FormPtr& f) {
  if (!f) return true;
  switch (f->kind) {
    case FKind::WeakEps:
    case FKind::WeakIn:
    case FKind::WeakBoxIn:
    case FKind::WeakOut:
    case FKind::Mu:
      return false;
    case FKind::DiaIn:
    case FKind::BoxIn:
      if (!hopi::as_process(f->a)) return false;
      return in_exact_fragment(f->b);
    case FKind::Guarantee:
      if (!hopi::as_process(f->a)) return false;
      return in_exact_fragment(f->b);
    default:
      return in_exact_fragment(f->a) && in_exact_fragment(f->b);
  }
}

namespace {

struct Def6 {
  // class members cache for the structural clauses
  std::map<std::string, std::vector<ProcPtr>> members;
  std::map<std::string, bool> memo;

  std::vector<ProcPtr>& cls(const ProcPtr& p) {
    auto key = hopi::alpha_key(p);
    auto it = members.find(key);
    if (it != members.end()) return it->second;
    int size = hopi::term_size(p);
    auto ms = size <= 5 ? class_members(p, 4, size + 6)
                        : class_members(p, 3, size + 4);
    return members.emplace(key, std::move(ms)).first->second;
  }

  bool equiv(const ProcPtr& p, const ProcPtr& q) {
    auto qk = hopi::alpha_key(q);
    for (auto& m : cls(p))
      if (hopi::alpha_key(m) == qk) return true;
    // classes may meet beyond one-sided depth; fall back on the meet test
    return congruent_by_rewriting(p, q);
  }

  std::optional<ProcPtr> bnfree_member(const ProcPtr& p) {
    for (auto& m : cls(p))
      if (hopi::bn(m).empty()) return m;
    return std::nullopt;
  }

  bool eval(const ProcPtr& p, const FormPtr& f) {
    std::string key = hopi::alpha_key(p) + "\x01" + hopi::formula_key(f);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool v = eval_raw(p, f);
    memo[key] = v;
    return v;
  }

  bool eval_raw(const ProcPtr& p, const FormPtr& f) {
    using hopi::Formula;
    switch (f->kind) {
      case FKind::True: return true;
      case FKind::False: return false;
      case FKind::Not: return !eval(p, f->a);
      case FKind::And: return eval(p, f->a) && eval(p, f->b);
      case FKind::Neq: return !(f->name == f->name2);
      case FKind::DiaTau: {
        for (auto& t : naive_taus(p))
          if (eval(t, f->a)) return true;
        return false;
      }
      case FKind::DiaOut: {
        auto relevant = hopi::fn(f->b);
        for (auto& o : naive_outs(p)) {
          if (!(o.subj == f->name)) continue;
          ProcPtr wrapped = o.payload;
          for (auto it = o.extruded.rbegin(); it != o.extruded.rend(); ++it)
            wrapped = Process::res(*it, wrapped);
          if (!eval(wrapped, f->a)) continue;
          // the extruded names are renameable; try the variants whose
          // names occur in the continuation formula
          std::vector<ProcPtr> targets{o.target};
          std::function<void(size_t, ProcPtr, std::vector<std::string>)> go =
              [&](size_t i, ProcPtr cur, std::vector<std::string> used) {
                if (i == o.extruded.size()) {
                  targets.push_back(cur);
                  return;
                }
                go(i + 1, cur, used);
                for (auto& r : relevant) {
                  if (hopi::has_free_name(o.target, Name{r})) continue;
                  if (hopi::has_free_name(o.payload, Name{r})) continue;
                  if (o.subj.id == r) continue;
                  bool isExt = false;
                  for (auto& e : o.extruded) isExt = isExt || e.id == r;
                  if (isExt) continue;
                  if (std::find(used.begin(), used.end(), r) != used.end()) continue;
                  auto used2 = used;
                  used2.push_back(r);
                  go(i + 1, hopi::rename_free_name(cur, o.extruded[i], Name{r}), used2);
                }
              };
          go(0, o.target, {});
          for (auto& tgt : targets)
            if (eval(tgt, f->b)) return true;
        }
        return false;
      }
      case FKind::DiaIn: {
        auto e = hopi::as_process(f->a);
        if (!e) throw std::logic_error("oracle: payload not a process");
        auto rep = bnfree_member(*e);
        if (!rep) return false;
        for (auto& t : naive_ins(p, f->name, *rep))
          if (eval(t, f->b)) return true;
        return false;
      }
      case FKind::BoxIn: {
        auto e = hopi::as_process(f->a);
        if (!e) throw std::logic_error("oracle: payload not a process");
        auto rep = bnfree_member(*e);
        if (!rep) return false;  // no receivable payload in the class
        auto ts = naive_ins(p, f->name, *rep);
        if (ts.empty()) return false;
        for (auto& t : ts)
          if (eval(t, f->b)) return true;
        return false;
      }
      case FKind::Zero: return equiv(p, Process::nil());
      case FKind::PropVar: return equiv(p, Process::mkvar(f->var));
      case FKind::InPrefix: {
        for (auto& m : cls(p)) {
          if (m->kind != PKind::Input || !(m->name == f->name)) continue;
          if (!(m->var == f->var) && hopi::has_free_var(m->a, f->var)) continue;
          ProcPtr body = hopi::rename_free_var(m->a, m->var, f->var);
          if (eval(body, f->a)) return true;
        }
        return false;
      }
      case FKind::InAdjoint:
        return eval(Process::input(f->name, f->var, p), f->a);
      case FKind::OutPrefix: {
        for (auto& m : cls(p)) {
          if (m->kind != PKind::Output || !(m->name == f->name)) continue;
          if (eval(m->a, f->a) && eval(m->b, f->b)) return true;
        }
        return false;
      }
      case FKind::OutAdjoint:
        return eval(Process::output(f->name, p, Process::nil()), f->a);
      case FKind::Par: {
        for (auto& m : cls(p)) {
          if (m->kind == PKind::Par && eval(m->a, f->a) && eval(m->b, f->b)) return true;
        }
        // the trivial split P = P|0
        if (eval(p, f->a) && eval(Process::nil(), f->b)) return true;
        if (eval(Process::nil(), f->a) && eval(p, f->b)) return true;
        return false;
      }
      case FKind::Guarantee: {
        auto e = hopi::as_process(f->a);
        if (!e) throw std::logic_error("oracle: guarantee lhs not a process");
        return eval(Process::par(p, *e), f->b);
      }
      case FKind::Reveal: {
        for (auto& m : cls(p)) {
          if (m->kind != PKind::Res) continue;
          if (m->name == f->name) {
            if (eval(m->a, f->a)) return true;
          } else if (!hopi::has_free_name(m->a, f->name)) {
            ProcPtr body = hopi::rename_free_name(m->a, m->name, f->name);
            if (eval(body, f->a)) return true;
          }
        }
        if (!hopi::has_free_name(p, f->name) && eval(p, f->a)) return true;
        return false;
      }
      case FKind::Hide:
        return eval(Process::res(f->name, p), f->a);
      case FKind::FreshName: {
        std::vector<std::string> avoid = hopi::fn(f->a);
        for (auto& n : hopi::names_of(p)) avoid.push_back(n);
        Name w{hopi::fresh_ident(avoid, "w")};
        return eval(p, hopi::formula_rename_name(f->a, f->name, w));
      }
      case FKind::FreshVar: {
        std::vector<std::string> avoid = hopi::fpv(f->a);
        for (auto& v : p->fv) avoid.push_back(v);
        for (auto& v : hopi::bv(p)) avoid.push_back(v);
        ProcVar w{hopi::fresh_ident(avoid, "W")};
        return eval(p, hopi::formula_rename_var(f->a, f->var, w));
      }
      case FKind::NotFree:
        return !hopi::has_free_name(p, f->name) && eval(p, f->a);
      case FKind::NoBound: {
        auto rep = bnfree_member(p);
        return rep && eval(*rep, f->a);
      }
      default:
        throw std::logic_error("oracle: formula outside the exact fragment");
    }
  }
};

}  // namespace

bool eval_def6(const ProcPtr& p, const FormPtr& f) {
  static Def6 shared;
  return shared.eval(p, f);
}

}  // namespace oracle
