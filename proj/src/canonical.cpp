#include "hopi/canonical.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <stdexcept>

namespace hopi {

ProcPtr subterm_at(const ProcPtr& p, const std::vector<int>& path) {
  ProcPtr t = p;
  for (int step : path) {
    t = (step == 0) ? t->a : t->b;
    if (!t) throw std::logic_error("subterm_at: bad path");
  }
  return t;
}

ProcPtr replace_at(const ProcPtr& p, const std::vector<int>& path, const ProcPtr& sub) {
  if (path.empty()) return sub;
  std::vector<int> rest(path.begin() + 1, path.end());
  switch (p->kind) {
    case PKind::Input:
      return Process::input(p->name, p->var, replace_at(p->a, rest, sub));
    case PKind::Output:
      return path[0] == 0
                 ? Process::output(p->name, replace_at(p->a, rest, sub), p->b)
                 : Process::output(p->name, p->a, replace_at(p->b, rest, sub));
    case PKind::Par:
      return path[0] == 0 ? Process::par(replace_at(p->a, rest, sub), p->b)
                          : Process::par(p->a, replace_at(p->b, rest, sub));
    case PKind::Res:
      return Process::res(p->name, replace_at(p->a, rest, sub));
    default:
      throw std::logic_error("replace_at: bad path");
  }
}

std::vector<ProcPtr> components(const ProcPtr& canon) {
  std::vector<ProcPtr> out;
  ProcPtr t = canon;
  while (t->kind == PKind::Par) {
    out.push_back(t->a);
    t = t->b;
  }
  out.push_back(t);
  return out;
}

ProcPtr par_of(const std::vector<ProcPtr>& comps) {
  if (comps.empty()) return Process::nil();
  ProcPtr t = comps.back();
  for (int i = static_cast<int>(comps.size()) - 2; i >= 0; i--)
    t = Process::par(comps[i], t);
  return t;
}

namespace {

// ---------------------------------------------------------------------
// Structural pass: erase vacuous restrictions, flatten and clean parallel
// spines, push restrictions onto the smallest component group using them.
// Component order and restriction-chain order stay arbitrary here.

ProcPtr struct_pass(const ProcPtr& p);

ProcPtr rebuild_spine(std::vector<ProcPtr> comps) {
  std::vector<ProcPtr> keep;
  for (auto& c : comps)
    if (c->kind != PKind::Nil) keep.push_back(c);
  return par_of(keep);
}

ProcPtr struct_pass(const ProcPtr& p) {
  switch (p->kind) {
    case PKind::Nil:
    case PKind::Var: return p;
    case PKind::Input:
      return Process::input(p->name, p->var, struct_pass(p->a));
    case PKind::Output:
      return Process::output(p->name, struct_pass(p->a), struct_pass(p->b));
    case PKind::Par: {
      std::vector<ProcPtr> comps;
      for (auto& c : components(struct_pass(p->a))) comps.push_back(c);
      for (auto& c : components(struct_pass(p->b))) comps.push_back(c);
      return rebuild_spine(std::move(comps));
    }
    case PKind::Res: {
      ProcPtr body = struct_pass(p->a);
      if (!has_free_name(body, p->name)) return body;
      if (body->kind == PKind::Par) {
        std::vector<ProcPtr> users, rest;
        for (auto& c : components(body)) {
          if (has_free_name(c, p->name)) users.push_back(c);
          else rest.push_back(c);
        }
        if (!rest.empty()) {
          rest.push_back(Process::res(p->name, par_of(users)));
          return rebuild_spine(std::move(rest));
        }
      }
      return Process::res(p->name, body);
    }
  }
  return p;
}

// ---------------------------------------------------------------------
// Ordering pass. Renders a structurally normalized term to a canonical
// string under an environment that names enclosing binders by binding
// level, so the rendering is alpha-invariant; parallel components sort by
// their renderings and restriction chains take the order minimizing the
// body rendering. The placeholder-named term realizing those choices is
// rebuilt alongside.

struct Asm {
  ProcPtr term;
  std::string key;
};

using Env = std::map<std::string, std::string>;

std::string level_name(int level) { return "!n" + std::to_string(level); }
std::string level_var(int level) { return "!v" + std::to_string(level); }

Asm assemble(const ProcPtr& t, const Env& nameEnv, const Env& varEnv, int level);

std::vector<int> chain_order(const std::vector<Name>& binders, const ProcPtr& body,
                             const Env& nameEnv, const Env& varEnv, int level) {
  size_t k = binders.size();
  std::vector<int> perm(k);
  for (size_t i = 0; i < k; i++) perm[i] = static_cast<int>(i);
  if (k <= 1) return perm;
  std::vector<int> best;
  std::string bestKey;
  std::vector<int> cur = perm;
  std::sort(cur.begin(), cur.end());
  do {
    Env ne = nameEnv;
    for (size_t i = 0; i < k; i++)
      ne[binders[cur[i]].id] = level_name(level + static_cast<int>(i));
    std::string key = assemble(body, ne, varEnv, level + static_cast<int>(k)).key;
    if (best.empty() || key < bestKey) {
      best = cur;
      bestKey = key;
    }
  } while (std::next_permutation(cur.begin(), cur.end()));
  return best;
}

Asm assemble(const ProcPtr& t, const Env& nameEnv, const Env& varEnv, int level) {
  auto nm = [&](const Name& n) -> std::pair<Name, std::string> {
    auto it = nameEnv.find(n.id);
    if (it != nameEnv.end()) return {Name{it->second}, it->second};
    return {n, "(" + n.id + ")"};
  };
  switch (t->kind) {
    case PKind::Nil:
      return {t, "0"};
    case PKind::Var: {
      auto it = varEnv.find(t->var.id);
      if (it != varEnv.end()) return {Process::mkvar(ProcVar{it->second}), it->second};
      return {t, "V(" + t->var.id + ")"};
    }
    case PKind::Input: {
      auto [subj, subjKey] = nm(t->name);
      std::string pv = level_var(level);
      Env ve = varEnv;
      ve[t->var.id] = pv;
      Asm body = assemble(t->a, nameEnv, ve, level + 1);
      return {Process::input(subj, ProcVar{pv}, body.term),
              "i" + subjKey + "{" + body.key + "}"};
    }
    case PKind::Output: {
      auto [subj, subjKey] = nm(t->name);
      Asm pay = assemble(t->a, nameEnv, varEnv, level);
      Asm cont = assemble(t->b, nameEnv, varEnv, level);
      return {Process::output(subj, pay.term, cont.term),
              "o" + subjKey + "[" + pay.key + ";" + cont.key + "]"};
    }
    case PKind::Par: {
      std::vector<Asm> asms;
      for (auto& c : components(t)) asms.push_back(assemble(c, nameEnv, varEnv, level));
      std::stable_sort(asms.begin(), asms.end(),
                       [](const Asm& a, const Asm& b) { return a.key < b.key; });
      std::vector<ProcPtr> terms;
      std::string key = "p[";
      for (size_t i = 0; i < asms.size(); i++) {
        terms.push_back(asms[i].term);
        if (i) key += ";";
        key += asms[i].key;
      }
      key += "]";
      return {par_of(terms), key};
    }
    case PKind::Res: {
      std::vector<Name> binders;
      ProcPtr body = t;
      while (body->kind == PKind::Res) {
        binders.push_back(body->name);
        body = body->a;
      }
      auto perm = chain_order(binders, body, nameEnv, varEnv, level);
      Env ne = nameEnv;
      for (size_t i = 0; i < perm.size(); i++)
        ne[binders[perm[i]].id] = level_name(level + static_cast<int>(i));
      Asm inner = assemble(body, ne, varEnv, level + static_cast<int>(perm.size()));
      ProcPtr out = inner.term;
      std::string key = inner.key;
      for (int i = static_cast<int>(perm.size()) - 1; i >= 0; i--) {
        out = Process::res(Name{level_name(level + i)}, out);
        key = "r{" + key;
      }
      for (size_t i = 0; i < perm.size(); i++) key += "}";
      return {out, key};
    }
  }
  return {t, "?"};
}

// Deterministic renaming of every binder, pre-order, avoiding free names.
struct Renamer {
  std::vector<std::string> avoidNames;
  std::vector<std::string> avoidVars;
  int nameIdx = 0;
  int varIdx = 0;

  std::string next_name() {
    for (;;) {
      std::string cand = "n" + std::to_string(nameIdx++);
      if (!std::binary_search(avoidNames.begin(), avoidNames.end(), cand)) return cand;
    }
  }
  std::string next_var() {
    for (;;) {
      std::string cand = "V" + std::to_string(varIdx++);
      if (!std::binary_search(avoidVars.begin(), avoidVars.end(), cand)) return cand;
    }
  }

  ProcPtr run(const ProcPtr& t, std::map<std::string, std::string>& nameEnv,
              std::map<std::string, std::string>& varEnv) {
    switch (t->kind) {
      case PKind::Nil: return t;
      case PKind::Var: {
        auto it = varEnv.find(t->var.id);
        return it == varEnv.end() ? t : Process::mkvar(ProcVar{it->second});
      }
      case PKind::Input: {
        auto itn = nameEnv.find(t->name.id);
        Name subj = itn == nameEnv.end() ? t->name : Name{itn->second};
        std::string target = next_var();
        auto saved = varEnv.count(t->var.id)
                         ? std::optional<std::string>(varEnv[t->var.id])
                         : std::nullopt;
        varEnv[t->var.id] = target;
        ProcPtr body = run(t->a, nameEnv, varEnv);
        if (saved) varEnv[t->var.id] = *saved; else varEnv.erase(t->var.id);
        return Process::input(subj, ProcVar{target}, body);
      }
      case PKind::Output: {
        auto itn = nameEnv.find(t->name.id);
        Name subj = itn == nameEnv.end() ? t->name : Name{itn->second};
        ProcPtr payload = run(t->a, nameEnv, varEnv);
        ProcPtr cont = run(t->b, nameEnv, varEnv);
        return Process::output(subj, payload, cont);
      }
      case PKind::Par: {
        ProcPtr l = run(t->a, nameEnv, varEnv);
        ProcPtr r = run(t->b, nameEnv, varEnv);
        return Process::par(l, r);
      }
      case PKind::Res: {
        std::string target = next_name();
        auto saved = nameEnv.count(t->name.id)
                         ? std::optional<std::string>(nameEnv[t->name.id])
                         : std::nullopt;
        nameEnv[t->name.id] = target;
        ProcPtr body = run(t->a, nameEnv, varEnv);
        if (saved) nameEnv[t->name.id] = *saved; else nameEnv.erase(t->name.id);
        return Process::res(Name{target}, body);
      }
    }
    return t;
  }
};

ProcPtr rename_binders(const ProcPtr& t) {
  Renamer r;
  r.avoidNames = t->fn;
  r.avoidVars = t->fv;
  std::map<std::string, std::string> ne, ve;
  return r.run(t, ne, ve);
}

}  // namespace

ProcPtr canonical(const ProcPtr& p) {
  Env ne, ve;
  return rename_binders(assemble(struct_pass(p), ne, ve, 0).term);
}

CanonicalProcess normalize(const ProcPtr& p) { return {canonical(p), true}; }

bool is_canonical(const ProcPtr& p) { return print(p) == print(canonical(p)); }

bool congruent(const ProcPtr& p, const ProcPtr& q) {
  return alpha_key(canonical(p)) == alpha_key(canonical(q));
}

std::string canonical_key(const ProcPtr& p) { return alpha_key(canonical(p)); }

// ---------------------------------------------------------------------
// Traced canonicalizer: performs the same normalization one elementary
// rewrite at a time, using the untraced pass as the ordering oracle.

namespace {

struct Tracer {
  ProcPtr root;
  RewriteTrace* trace;

  ProcPtr at(const std::vector<int>& path) const { return subterm_at(root, path); }

  void apply(RewriteStep::Kind kind, const std::vector<int>& path,
             const std::string& x = "", const std::string& y = "") {
    ProcPtr t = at(path);
    ProcPtr repl;
    switch (kind) {
      case RewriteStep::ParComm:
        assert(t->kind == PKind::Par);
        repl = Process::par(t->b, t->a);
        break;
      case RewriteStep::ParAssocLR:
        assert(t->kind == PKind::Par && t->a->kind == PKind::Par);
        repl = Process::par(t->a->a, Process::par(t->a->b, t->b));
        break;
      case RewriteStep::ParAssocRL:
        assert(t->kind == PKind::Par && t->b->kind == PKind::Par);
        repl = Process::par(Process::par(t->a, t->b->a), t->b->b);
        break;
      case RewriteStep::ParUnitDrop:
        assert(t->kind == PKind::Par && t->b->kind == PKind::Nil);
        repl = t->a;
        break;
      case RewriteStep::ScopeExtOut:
        assert(t->kind == PKind::Res && t->a->kind == PKind::Par &&
               !has_free_name(t->a->a, t->name));
        repl = Process::par(t->a->a, Process::res(t->name, t->a->b));
        break;
      case RewriteStep::ResSwap:
        assert(t->kind == PKind::Res && t->a->kind == PKind::Res);
        repl = Process::res(t->a->name, Process::res(t->name, t->a->a));
        break;
      case RewriteStep::ResVacDrop:
        assert(t->kind == PKind::Res && !has_free_name(t->a, t->name));
        repl = t->a;
        break;
      case RewriteStep::AlphaRes:
        assert(t->kind == PKind::Res && t->name.id == x);
        repl = Process::res(Name{y}, rename_free_name(t->a, Name{x}, Name{y}));
        break;
      case RewriteStep::AlphaIn:
        assert(t->kind == PKind::Input && t->var.id == x);
        repl = Process::input(t->name, ProcVar{y},
                              rename_free_var(t->a, ProcVar{x}, ProcVar{y}));
        break;
    }
    ProcPtr before = root;
    root = replace_at(root, path, repl);
    if (trace) trace->push_back({kind, path, x, y, before, root});
  }

  std::vector<ProcPtr> spine(const std::vector<int>& base) const {
    return components(at(base));
  }

  // Swap components i-1 and i of the spine rooted at base.
  void swap_adjacent(const std::vector<int>& base, int i) {
    std::vector<int> node = base;
    for (int k = 0; k < i - 1; k++) node.push_back(1);
    ProcPtr t = at(node);
    assert(t->kind == PKind::Par);
    if (t->b->kind == PKind::Par) {
      apply(RewriteStep::ParAssocRL, node);
      std::vector<int> left = node;
      left.push_back(0);
      apply(RewriteStep::ParComm, left);
      apply(RewriteStep::ParAssocLR, node);
    } else {
      apply(RewriteStep::ParComm, node);
    }
  }

  void flatten(const std::vector<int>& base) {
    std::vector<int> cur = base;
    while (at(cur)->kind == PKind::Par) {
      while (at(cur)->a->kind == PKind::Par) apply(RewriteStep::ParAssocLR, cur);
      cur.push_back(1);
    }
  }

  void drop_nils(const std::vector<int>& base) {
    for (;;) {
      if (at(base)->kind != PKind::Par) return;
      std::vector<int> np = base;
      bool acted = false;
      while (at(np)->kind == PKind::Par) {
        ProcPtr t = at(np);
        if (t->a->kind == PKind::Nil) {
          apply(RewriteStep::ParComm, np);
          apply(RewriteStep::ParUnitDrop, np);
          acted = true;
          break;
        }
        if (t->b->kind == PKind::Nil) {
          apply(RewriteStep::ParUnitDrop, np);
          acted = true;
          break;
        }
        np.push_back(1);
      }
      if (!acted) return;
    }
  }

  // Structural phase mirroring struct_pass.
  void structure_at(const std::vector<int>& path) {
    ProcPtr t = at(path);
    switch (t->kind) {
      case PKind::Nil:
      case PKind::Var: return;
      case PKind::Input: {
        std::vector<int> c = path;
        c.push_back(0);
        structure_at(c);
        return;
      }
      case PKind::Output: {
        std::vector<int> c0 = path, c1 = path;
        c0.push_back(0);
        c1.push_back(1);
        structure_at(c0);
        structure_at(c1);
        return;
      }
      case PKind::Par: {
        std::vector<int> c0 = path, c1 = path;
        c0.push_back(0);
        c1.push_back(1);
        structure_at(c0);
        structure_at(c1);
        flatten(path);
        drop_nils(path);
        return;
      }
      case PKind::Res: {
        std::vector<int> c = path;
        c.push_back(0);
        structure_at(c);
        handle_res(path);
        return;
      }
    }
  }

  void handle_res(const std::vector<int>& path) {
    ProcPtr t = at(path);
    assert(t->kind == PKind::Res);
    if (!has_free_name(t->a, t->name)) {
      apply(RewriteStep::ResVacDrop, path);
      return;
    }
    if (t->a->kind != PKind::Par) return;
    std::vector<int> curRes = path;
    bool moved = false;
    for (;;) {
      ProcPtr rt = at(curRes);
      if (rt->kind != PKind::Res || rt->a->kind != PKind::Par) break;
      std::vector<int> bodyPath = curRes;
      bodyPath.push_back(0);
      auto comps = spine(bodyPath);
      int idx = -1;
      for (size_t i = 0; i < comps.size(); i++) {
        if (!has_free_name(comps[i], rt->name)) { idx = static_cast<int>(i); break; }
      }
      if (idx < 0) break;
      for (int j = idx; j >= 1; j--) swap_adjacent(bodyPath, j);
      apply(RewriteStep::ScopeExtOut, curRes);
      curRes.push_back(1);
      moved = true;
    }
    if (moved) {
      flatten(path);
      drop_nils(path);
    }
  }

  // Ordering phase: realize the same component and chain order the
  // untraced assemble() chooses, tracked by the same environments.
  void order_at(const std::vector<int>& path, Env nameEnv, Env varEnv, int level) {
    ProcPtr t = at(path);
    switch (t->kind) {
      case PKind::Nil:
      case PKind::Var: return;
      case PKind::Input: {
        varEnv[t->var.id] = level_var(level);
        std::vector<int> c = path;
        c.push_back(0);
        order_at(c, nameEnv, varEnv, level + 1);
        return;
      }
      case PKind::Output: {
        std::vector<int> c0 = path, c1 = path;
        c0.push_back(0);
        c1.push_back(1);
        order_at(c0, nameEnv, varEnv, level);
        order_at(c1, nameEnv, varEnv, level);
        return;
      }
      case PKind::Par: {
        // selection sort by the assemble keys
        for (size_t i = 0;; i++) {
          auto comps = spine(path);
          if (i + 1 >= comps.size()) break;
          size_t best = i;
          std::string bestKey = assemble(comps[i], nameEnv, varEnv, level).key;
          for (size_t j = i + 1; j < comps.size(); j++) {
            std::string k = assemble(comps[j], nameEnv, varEnv, level).key;
            if (k < bestKey) {
              best = j;
              bestKey = k;
            }
          }
          for (size_t j = best; j > i; j--)
            swap_adjacent(path, static_cast<int>(j));
        }
        auto comps = spine(path);
        std::vector<int> np = path;
        for (size_t i = 0; i < comps.size(); i++) {
          std::vector<int> cp = np;
          if (i + 1 < comps.size()) cp.push_back(0);
          order_at(cp, nameEnv, varEnv, level);
          np.push_back(1);
        }
        return;
      }
      case PKind::Res: {
        std::vector<Name> binders;
        ProcPtr body = t;
        while (body->kind == PKind::Res) {
          binders.push_back(body->name);
          body = body->a;
        }
        auto perm = chain_order(binders, body, nameEnv, varEnv, level);
        // realize the permutation by adjacent swaps (selection sort)
        std::vector<int> want(perm.size());
        for (size_t i = 0; i < perm.size(); i++) want[i] = perm[i];
        std::vector<int> cur(perm.size());
        for (size_t i = 0; i < perm.size(); i++) cur[i] = static_cast<int>(i);
        for (size_t i = 0; i < want.size(); i++) {
          size_t j = i;
          while (cur[j] != want[i]) j++;
          for (size_t k = j; k > i; k--) {
            // swap chain elements k-1 and k: the node above element k-1
            std::vector<int> node = path;
            for (size_t d = 0; d + 1 < k; d++) node.push_back(0);
            ProcPtr rn = at(node);
            apply(RewriteStep::ResSwap, node, rn->name.id, rn->a->name.id);
            std::swap(cur[k - 1], cur[k]);
          }
        }
        Env ne = nameEnv;
        std::vector<int> bodyPath = path;
        ProcPtr walk = at(path);
        for (size_t i = 0; i < perm.size(); i++) {
          ne[walk->name.id] = level_name(level + static_cast<int>(i));
          bodyPath.push_back(0);
          walk = walk->a;
        }
        order_at(bodyPath, ne, varEnv, level + static_cast<int>(perm.size()));
        return;
      }
    }
  }

  // Two-phase binder renaming toward the deterministic scheme.
  void rename_pass() {
    ProcPtr target = rename_binders(root);
    if (print(target) == print(root)) return;

    std::vector<std::string> avoid = names_of(root);
    for (auto& v : bv(root)) avoid.push_back(v);
    for (auto& v : root->fv) avoid.push_back(v);
    int tmpIdx = 0;
    auto fresh_tmp = [&](const char* base) {
      for (;;) {
        std::string cand = std::string(base) + std::to_string(tmpIdx++);
        if (std::find(avoid.begin(), avoid.end(), cand) == avoid.end()) {
          avoid.push_back(cand);
          return cand;
        }
      }
    };

    std::vector<std::vector<int>> binderPaths;
    std::function<void(const std::vector<int>&)> visit =
        [&](const std::vector<int>& p) {
          ProcPtr t = at(p);
          std::vector<int> c0 = p, c1 = p;
          c0.push_back(0);
          c1.push_back(1);
          switch (t->kind) {
            case PKind::Nil:
            case PKind::Var: return;
            case PKind::Input:
              binderPaths.push_back(p);
              visit(c0);
              return;
            case PKind::Output:
              visit(c0);
              visit(c1);
              return;
            case PKind::Par:
              visit(c0);
              visit(c1);
              return;
            case PKind::Res:
              binderPaths.push_back(p);
              visit(c0);
              return;
          }
        };
    visit({});
    for (auto& p : binderPaths) {
      ProcPtr t = at(p);
      if (t->kind == PKind::Res)
        apply(RewriteStep::AlphaRes, p, t->name.id, fresh_tmp("tmpn"));
      else
        apply(RewriteStep::AlphaIn, p, t->var.id, fresh_tmp("TmpV"));
    }

    std::function<void(const std::vector<int>&, const ProcPtr&)> visit2 =
        [&](const std::vector<int>& p, const ProcPtr& tgt) {
          ProcPtr t = at(p);
          std::vector<int> c0 = p, c1 = p;
          c0.push_back(0);
          c1.push_back(1);
          switch (t->kind) {
            case PKind::Nil:
            case PKind::Var: return;
            case PKind::Input:
              if (t->var.id != tgt->var.id)
                apply(RewriteStep::AlphaIn, p, t->var.id, tgt->var.id);
              visit2(c0, tgt->a);
              return;
            case PKind::Output:
              visit2(c0, tgt->a);
              visit2(c1, tgt->b);
              return;
            case PKind::Par:
              visit2(c0, tgt->a);
              visit2(c1, tgt->b);
              return;
            case PKind::Res:
              if (t->name.id != tgt->name.id)
                apply(RewriteStep::AlphaRes, p, t->name.id, tgt->name.id);
              visit2(c0, tgt->a);
              return;
          }
        };
    visit2({}, target);
  }
};

}  // namespace

ProcPtr canonical_traced(const ProcPtr& p, RewriteTrace& trace) {
  Tracer tr{p, &trace};
  tr.structure_at({});
  tr.order_at({}, {}, {}, 0);
  tr.rename_pass();
  ProcPtr fast = canonical(p);
  if (print(fast) != print(tr.root))
    throw std::logic_error("canonical_traced: trace result differs from canonical form");
  return tr.root;
}

ProcPtr freshen_binders_traced(const ProcPtr& p, RewriteTrace& trace,
                               const std::vector<std::string>& extraAvoid) {
  Tracer tr{p, &trace};
  std::vector<std::string> avoid = names_of(p);
  for (auto& v : bv(p)) avoid.push_back(v);
  for (auto& v : p->fv) avoid.push_back(v);
  avoid.insert(avoid.end(), extraAvoid.begin(), extraAvoid.end());
  int idx = 0;
  auto fresh = [&](const char* base) {
    for (;;) {
      std::string cand = std::string(base) + std::to_string(idx++);
      if (std::find(avoid.begin(), avoid.end(), cand) == avoid.end()) {
        avoid.push_back(cand);
        return cand;
      }
    }
  };
  std::function<void(const std::vector<int>&)> visit = [&](const std::vector<int>& path) {
    ProcPtr t = tr.at(path);
    std::vector<int> c0 = path, c1 = path;
    c0.push_back(0);
    c1.push_back(1);
    switch (t->kind) {
      case PKind::Nil:
      case PKind::Var: return;
      case PKind::Input:
        tr.apply(RewriteStep::AlphaIn, path, t->var.id, fresh("FV"));
        visit(c0);
        return;
      case PKind::Output:
        visit(c0);
        visit(c1);
        return;
      case PKind::Par:
        visit(c0);
        visit(c1);
        return;
      case PKind::Res:
        tr.apply(RewriteStep::AlphaRes, path, t->name.id, fresh("fb"));
        visit(c0);
        return;
    }
  };
  visit({});
  return tr.root;
}

}  // namespace hopi
