#include "hopi/syntax.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hopi {

namespace {

std::vector<std::string> sorted_union(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> erased(std::vector<std::string> v, const std::string& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
  return v;
}

std::vector<std::string> inserted(std::vector<std::string> v, const std::string& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
  return v;
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

ProcPtr Process::nil() {
  auto p = std::shared_ptr<Process>(new Process());
  p->kind = PKind::Nil;
  return p;
}

ProcPtr Process::mkvar(ProcVar v) {
  auto p = std::shared_ptr<Process>(new Process());
  p->kind = PKind::Var;
  p->var = std::move(v);
  p->fv = {p->var.id};
  return p;
}

ProcPtr Process::input(Name subj, ProcVar binder, ProcPtr body) {
  auto p = std::shared_ptr<Process>(new Process());
  p->kind = PKind::Input;
  p->name = std::move(subj);
  p->var = std::move(binder);
  p->a = std::move(body);
  p->fn = inserted(p->a->fn, p->name.id);
  p->fv = erased(p->a->fv, p->var.id);
  return p;
}

ProcPtr Process::output(Name subj, ProcPtr payload, ProcPtr cont) {
  auto p = std::shared_ptr<Process>(new Process());
  p->kind = PKind::Output;
  p->name = std::move(subj);
  p->a = std::move(payload);
  p->b = std::move(cont);
  p->fn = inserted(sorted_union(p->a->fn, p->b->fn), p->name.id);
  p->fv = sorted_union(p->a->fv, p->b->fv);
  return p;
}

ProcPtr Process::par(ProcPtr l, ProcPtr r) {
  auto p = std::shared_ptr<Process>(new Process());
  p->kind = PKind::Par;
  p->a = std::move(l);
  p->b = std::move(r);
  p->fn = sorted_union(p->a->fn, p->b->fn);
  p->fv = sorted_union(p->a->fv, p->b->fv);
  return p;
}

ProcPtr Process::res(Name binder, ProcPtr body) {
  auto p = std::shared_ptr<Process>(new Process());
  p->kind = PKind::Res;
  p->name = std::move(binder);
  p->a = std::move(body);
  p->fn = erased(p->a->fn, p->name.id);
  p->fv = p->a->fv;
  return p;
}

bool has_free_name(const ProcPtr& p, const Name& n) { return contains(p->fn, n.id); }
bool has_free_var(const ProcPtr& p, const ProcVar& v) { return contains(p->fv, v.id); }
bool is_closed(const ProcPtr& p) { return p->fv.empty(); }

static void collect_bn(const ProcPtr& p, std::set<std::string>& out) {
  switch (p->kind) {
    case PKind::Nil:
    case PKind::Var: return;
    case PKind::Input: collect_bn(p->a, out); return;
    case PKind::Output: collect_bn(p->a, out); collect_bn(p->b, out); return;
    case PKind::Par: collect_bn(p->a, out); collect_bn(p->b, out); return;
    case PKind::Res: out.insert(p->name.id); collect_bn(p->a, out); return;
  }
}

static void collect_bv(const ProcPtr& p, std::set<std::string>& out) {
  switch (p->kind) {
    case PKind::Nil:
    case PKind::Var: return;
    case PKind::Input: out.insert(p->var.id); collect_bv(p->a, out); return;
    case PKind::Output: collect_bv(p->a, out); collect_bv(p->b, out); return;
    case PKind::Par: collect_bv(p->a, out); collect_bv(p->b, out); return;
    case PKind::Res: collect_bv(p->a, out); return;
  }
}

std::vector<std::string> bn(const ProcPtr& p) {
  std::set<std::string> s;
  collect_bn(p, s);
  return {s.begin(), s.end()};
}

std::vector<std::string> bv(const ProcPtr& p) {
  std::set<std::string> s;
  collect_bv(p, s);
  return {s.begin(), s.end()};
}

std::vector<std::string> names_of(const ProcPtr& p) {
  std::set<std::string> s;
  collect_bn(p, s);
  s.insert(p->fn.begin(), p->fn.end());
  return {s.begin(), s.end()};
}

bool restriction_free(const ProcPtr& p) {
  switch (p->kind) {
    case PKind::Nil:
    case PKind::Var: return true;
    case PKind::Input: return restriction_free(p->a);
    case PKind::Output: return restriction_free(p->a) && restriction_free(p->b);
    case PKind::Par: return restriction_free(p->a) && restriction_free(p->b);
    case PKind::Res: return false;
  }
  return true;
}

long depth(const ProcPtr& p) {
  switch (p->kind) {
    case PKind::Nil:
    case PKind::Var: return 0;
    case PKind::Input: return 1 + depth(p->a);
    case PKind::Output: return 1 + depth(p->a) + depth(p->b);
    case PKind::Par: return depth(p->a) + depth(p->b);
    case PKind::Res: return depth(p->a);
  }
  return 0;
}

int term_size(const ProcPtr& p) {
  switch (p->kind) {
    case PKind::Nil:
    case PKind::Var: return 1;
    case PKind::Input: return 1 + term_size(p->a);
    case PKind::Output: return 1 + term_size(p->a) + term_size(p->b);
    case PKind::Par: return 1 + term_size(p->a) + term_size(p->b);
    case PKind::Res: return 1 + term_size(p->a);
  }
  return 1;
}

namespace {

// Binder levels are assigned in traversal order, which makes the key
// canonical across alpha-variants.
void key_rec(const ProcPtr& p, std::map<std::string, int>& nameLvl,
             std::map<std::string, int>& varLvl, int& next, std::string& out) {
  switch (p->kind) {
    case PKind::Nil:
      out += '0';
      return;
    case PKind::Var: {
      auto it = varLvl.find(p->var.id);
      if (it != varLvl.end()) {
        out += 'v';
        out += std::to_string(it->second);
      } else {
        out += "V(";
        out += p->var.id;
        out += ')';
      }
      return;
    }
    case PKind::Input: {
      out += 'i';
      auto it = nameLvl.find(p->name.id);
      if (it != nameLvl.end()) {
        out += 'n';
        out += std::to_string(it->second);
      } else {
        out += '(';
        out += p->name.id;
        out += ')';
      }
      out += '{';
      auto saved = varLvl.count(p->var.id) ? std::optional<int>(varLvl[p->var.id])
                                           : std::nullopt;
      varLvl[p->var.id] = next++;
      key_rec(p->a, nameLvl, varLvl, next, out);
      if (saved) varLvl[p->var.id] = *saved; else varLvl.erase(p->var.id);
      out += '}';
      return;
    }
    case PKind::Output: {
      out += 'o';
      auto it = nameLvl.find(p->name.id);
      if (it != nameLvl.end()) {
        out += 'n';
        out += std::to_string(it->second);
      } else {
        out += '(';
        out += p->name.id;
        out += ')';
      }
      out += '[';
      key_rec(p->a, nameLvl, varLvl, next, out);
      out += ';';
      key_rec(p->b, nameLvl, varLvl, next, out);
      out += ']';
      return;
    }
    case PKind::Par:
      out += "p[";
      key_rec(p->a, nameLvl, varLvl, next, out);
      out += ';';
      key_rec(p->b, nameLvl, varLvl, next, out);
      out += ']';
      return;
    case PKind::Res: {
      out += "r{";
      auto saved = nameLvl.count(p->name.id) ? std::optional<int>(nameLvl[p->name.id])
                                             : std::nullopt;
      nameLvl[p->name.id] = next++;
      key_rec(p->a, nameLvl, varLvl, next, out);
      if (saved) nameLvl[p->name.id] = *saved; else nameLvl.erase(p->name.id);
      out += '}';
      return;
    }
  }
}

}  // namespace

std::string alpha_key(const ProcPtr& p) {
  std::map<std::string, int> nl, vl;
  int next = 0;
  std::string out;
  out.reserve(16);
  key_rec(p, nl, vl, next, out);
  return out;
}

bool alpha_eq(const ProcPtr& p, const ProcPtr& q) {
  return p == q || alpha_key(p) == alpha_key(q);
}

namespace {

void print_rec(const ProcPtr& p, std::string& out) {
  switch (p->kind) {
    case PKind::Nil: out += '0'; return;
    case PKind::Var: out += p->var.id; return;
    case PKind::Input:
      out += p->name.id;
      if (has_free_var(p->a, p->var)) {
        out += '(';
        out += p->var.id;
        out += ')';
      }
      out += '.';
      if (p->a->kind == PKind::Par) {
        out += '(';
        print_rec(p->a, out);
        out += ')';
      } else {
        print_rec(p->a, out);
      }
      return;
    case PKind::Output:
      out += p->name.id;
      out += '<';
      print_rec(p->a, out);
      out += '>';
      out += '.';
      if (p->b->kind == PKind::Par) {
        out += '(';
        print_rec(p->b, out);
        out += ')';
      } else {
        print_rec(p->b, out);
      }
      return;
    case PKind::Par:
      print_rec(p->a, out);
      out += " | ";
      if (p->b->kind == PKind::Par) {
        out += '(';
        print_rec(p->b, out);
        out += ')';
      } else {
        print_rec(p->b, out);
      }
      return;
    case PKind::Res:
      out += "(nu ";
      out += p->name.id;
      out += ") ";
      if (p->a->kind == PKind::Par) {
        out += '(';
        print_rec(p->a, out);
        out += ')';
      } else {
        print_rec(p->a, out);
      }
      return;
  }
}

}  // namespace

std::string print(const ProcPtr& p) {
  std::string out;
  print_rec(p, out);
  return out;
}

std::string fresh_ident(const std::vector<std::string>& avoid, const std::string& base) {
  auto used = [&](const std::string& s) {
    return std::find(avoid.begin(), avoid.end(), s) != avoid.end();
  };
  if (!used(base)) return base;
  for (int i = 0;; i++) {
    std::string cand = base + std::to_string(i);
    if (!used(cand)) return cand;
  }
}

namespace {

// One engine for the three capture-avoiding traversals. Exactly one of
// varRepl (variable -> term), nameTo (name -> name) is active.
struct SubstEnv {
  const ProcVar* varFrom = nullptr;
  const ProcPtr* varRepl = nullptr;
  const Name* nameFrom = nullptr;
  const Name* nameTo = nullptr;

  bool hits_var(const ProcVar& v) const { return varFrom && *varFrom == v; }
  bool hits_name(const Name& n) const { return nameFrom && *nameFrom == n; }

  // Identifiers a binder must avoid to keep the traversal capture-free.
  std::vector<std::string> dangerous_names() const {
    if (varRepl) return (*varRepl)->fn;
    if (nameTo) return {nameTo->id};
    return {};
  }
  std::vector<std::string> dangerous_vars() const {
    if (varRepl) return (*varRepl)->fv;
    return {};
  }
};

ProcPtr subst_rec(const ProcPtr& p, const SubstEnv& env);

ProcPtr freshen_input_binder(const ProcPtr& p, const std::vector<std::string>& alsoAvoid) {
  // p is an Input node whose binder collides; rename the binder.
  std::vector<std::string> avoid = p->a->fv;
  avoid.insert(avoid.end(), alsoAvoid.begin(), alsoAvoid.end());
  avoid.push_back(p->var.id);
  ProcVar nb{fresh_ident(avoid, "W")};
  return Process::input(p->name, nb, rename_free_var(p->a, p->var, nb));
}

ProcPtr freshen_res_binder(const ProcPtr& p, const std::vector<std::string>& alsoAvoid) {
  std::vector<std::string> avoid = p->a->fn;
  avoid.insert(avoid.end(), alsoAvoid.begin(), alsoAvoid.end());
  avoid.push_back(p->name.id);
  Name nb{fresh_ident(avoid, "w")};
  return Process::res(nb, rename_free_name(p->a, p->name, nb));
}

ProcPtr subst_rec(const ProcPtr& p, const SubstEnv& env) {
  switch (p->kind) {
    case PKind::Nil: return p;
    case PKind::Var:
      if (env.hits_var(p->var)) return *env.varRepl;
      return p;
    case PKind::Input: {
      ProcPtr cur = p;
      if (env.varFrom && cur->var == *env.varFrom) return cur;  // shadowed
      // Avoid capturing free identifiers of the replacement.
      auto dv = env.dangerous_vars();
      if (std::find(dv.begin(), dv.end(), cur->var.id) != dv.end() &&
          (env.varFrom ? has_free_var(cur->a, *env.varFrom) : true))
        cur = freshen_input_binder(cur, dv);
      return Process::input(cur->name, cur->var, subst_rec(cur->a, env));
    }
    case PKind::Output:
      return Process::output(env.hits_name(p->name) ? *env.nameTo : p->name,
                             subst_rec(p->a, env), subst_rec(p->b, env));
    case PKind::Par:
      return Process::par(subst_rec(p->a, env), subst_rec(p->b, env));
    case PKind::Res: {
      ProcPtr cur = p;
      if (env.nameFrom && cur->name == *env.nameFrom) return cur;  // shadowed
      auto dn = env.dangerous_names();
      bool bodyHit = env.nameFrom ? has_free_name(cur->a, *env.nameFrom)
                                  : (env.varFrom ? has_free_var(cur->a, *env.varFrom) : false);
      if (std::find(dn.begin(), dn.end(), cur->name.id) != dn.end() && bodyHit)
        cur = freshen_res_binder(cur, dn);
      return Process::res(cur->name, subst_rec(cur->a, env));
    }
  }
  return p;
}

}  // namespace

ProcPtr substitute(const ProcPtr& p, const ProcVar& u, const ProcPtr& e) {
  if (!has_free_var(p, u)) return p;
  SubstEnv env;
  env.varFrom = &u;
  env.varRepl = &e;
  return subst_rec(p, env);
}

ProcPtr rename_free_var(const ProcPtr& p, const ProcVar& from, const ProcVar& to) {
  if (from == to || !has_free_var(p, from)) return p;
  ProcPtr repl = Process::mkvar(to);
  SubstEnv env;
  env.varFrom = &from;
  env.varRepl = &repl;
  return subst_rec(p, env);
}

ProcPtr rename_free_name(const ProcPtr& p, const Name& from, const Name& to) {
  if (from == to || !has_free_name(p, from)) return p;
  SubstEnv env;
  env.nameFrom = &from;
  env.nameTo = &to;
  // Input subjects are names too; subst_rec handles Output/Res, so wrap the
  // recursion here to also rewrite Input subjects.
  struct Walk {
    const SubstEnv& env;
    ProcPtr operator()(const ProcPtr& t) const {
      switch (t->kind) {
        case PKind::Nil:
        case PKind::Var: return t;
        case PKind::Input: {
          ProcPtr cur = t;
          return Process::input(cur->name == *env.nameFrom ? *env.nameTo : cur->name,
                                cur->var, (*this)(cur->a));
        }
        case PKind::Output:
          return Process::output(t->name == *env.nameFrom ? *env.nameTo : t->name,
                                 (*this)(t->a), (*this)(t->b));
        case PKind::Par: return Process::par((*this)(t->a), (*this)(t->b));
        case PKind::Res: {
          ProcPtr cur = t;
          if (cur->name == *env.nameFrom) return cur;  // shadowed below
          if (cur->name == *env.nameTo && has_free_name(cur->a, *env.nameFrom))
            cur = freshen_res_binder(cur, {env.nameTo->id});
          return Process::res(cur->name, (*this)(cur->a));
        }
      }
      return t;
    }
  };
  return Walk{env}(p);
}

ProcPtr replication_encode(const ProcPtr& p, const Name& a) {
  if (has_free_name(p, a))
    throw std::invalid_argument("replication_encode: trigger name occurs free in the process");
  std::vector<std::string> avoid = p->fv;
  ProcVar x{fresh_ident(avoid, "X")};
  // D = a(X).(X | a<X>.0)
  ProcPtr X = Process::mkvar(x);
  ProcPtr d = Process::input(a, x,
      Process::par(X, Process::output(a, X, Process::nil())));
  // (nu a)(D | a<P|D>.0)
  return Process::res(a,
      Process::par(d, Process::output(a, Process::par(p, d), Process::nil())));
}

}  // namespace hopi
