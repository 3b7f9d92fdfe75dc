#include "hopi/formula.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hopi {

namespace {

FormPtr node(FKind k, Name n = {}, Name n2 = {}, ProcVar v = {}, FormPtr a = nullptr,
             FormPtr b = nullptr, Sugar sugar = Sugar::None) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->name = std::move(n);
  f->name2 = std::move(n2);
  f->var = std::move(v);
  f->a = std::move(a);
  f->b = std::move(b);
  f->sugar = sugar;
  return f;
}

FormPtr make(FKind k) { return node(k); }

}  // namespace

FormPtr Formula::truth() { return make(FKind::True); }
FormPtr Formula::falsity() { return make(FKind::False); }
FormPtr Formula::lnot(FormPtr x) { return node(FKind::Not, {}, {}, {}, std::move(x), nullptr); }
FormPtr Formula::land(FormPtr x, FormPtr y) {
  return node(FKind::And, {}, {}, {}, std::move(x), std::move(y));
}
FormPtr Formula::lor(FormPtr x, FormPtr y) {
  return node(FKind::Not, {}, {}, {}, land(lnot(std::move(x)), lnot(std::move(y))), nullptr,
              Sugar::Or);
}
FormPtr Formula::implies(FormPtr x, FormPtr y) {
  return node(FKind::Not, {}, {}, {}, land(std::move(x), lnot(std::move(y))), nullptr,
              Sugar::Implies);
}
FormPtr Formula::iff(FormPtr x, FormPtr y) { return land(implies(x, y), implies(y, x)); }
FormPtr Formula::dia_tau(FormPtr cont) {
  return node(FKind::DiaTau, {}, {}, {}, std::move(cont), nullptr);
}
FormPtr Formula::dia_in(Name a, FormPtr payload, FormPtr cont) {
  return node(FKind::DiaIn, std::move(a), {}, {}, std::move(payload), std::move(cont));
}
FormPtr Formula::box_in(Name a, FormPtr payload, FormPtr cont) {
  return node(FKind::BoxIn, std::move(a), {}, {}, std::move(payload), std::move(cont));
}
FormPtr Formula::dia_out(Name a, FormPtr payload, FormPtr cont) {
  return node(FKind::DiaOut, std::move(a), {}, {}, std::move(payload), std::move(cont));
}
FormPtr Formula::zero() { return make(FKind::Zero); }
FormPtr Formula::propvar(ProcVar v) {
  return node(FKind::PropVar, {}, {}, std::move(v), nullptr, nullptr);
}
FormPtr Formula::in_prefix(Name a, ProcVar x, FormPtr body) {
  return node(FKind::InPrefix, std::move(a), {}, std::move(x), std::move(body), nullptr);
}
FormPtr Formula::in_adjoint(FormPtr body, Name a, ProcVar x) {
  return node(FKind::InAdjoint, std::move(a), {}, std::move(x), std::move(body), nullptr);
}
FormPtr Formula::out_prefix(Name a, FormPtr payload, FormPtr cont) {
  return node(FKind::OutPrefix, std::move(a), {}, {}, std::move(payload), std::move(cont));
}
FormPtr Formula::out_adjoint(FormPtr body, Name a) {
  return node(FKind::OutAdjoint, std::move(a), {}, {}, std::move(body), nullptr);
}
FormPtr Formula::par(FormPtr x, FormPtr y) {
  return node(FKind::Par, {}, {}, {}, std::move(x), std::move(y));
}
FormPtr Formula::guarantee(FormPtr x, FormPtr y) {
  return node(FKind::Guarantee, {}, {}, {}, std::move(x), std::move(y));
}
FormPtr Formula::reveal(Name a, FormPtr x) {
  return node(FKind::Reveal, std::move(a), {}, {}, std::move(x), nullptr);
}
FormPtr Formula::hide(FormPtr x, Name a) {
  return node(FKind::Hide, std::move(a), {}, {}, std::move(x), nullptr);
}
FormPtr Formula::fresh_name(Name x, FormPtr body) {
  return node(FKind::FreshName, std::move(x), {}, {}, std::move(body), nullptr);
}
FormPtr Formula::fresh_var(ProcVar x, FormPtr body) {
  return node(FKind::FreshVar, {}, {}, std::move(x), std::move(body), nullptr);
}
FormPtr Formula::not_free(Name a, FormPtr x) {
  return node(FKind::NotFree, std::move(a), {}, {}, std::move(x), nullptr);
}
FormPtr Formula::no_bound(FormPtr x) {
  return node(FKind::NoBound, {}, {}, {}, std::move(x), nullptr);
}
FormPtr Formula::neq(Name a, Name b) {
  return node(FKind::Neq, std::move(a), std::move(b), {}, nullptr, nullptr);
}
FormPtr Formula::weak_eps(FormPtr cont) {
  return node(FKind::WeakEps, {}, {}, {}, std::move(cont), nullptr);
}
FormPtr Formula::weak_in(Name a, FormPtr payload, FormPtr cont) {
  return node(FKind::WeakIn, std::move(a), {}, {}, std::move(payload), std::move(cont));
}
FormPtr Formula::weak_box_in(Name a, FormPtr payload, FormPtr cont) {
  return node(FKind::WeakBoxIn, std::move(a), {}, {}, std::move(payload), std::move(cont));
}
FormPtr Formula::weak_out(Name a, FormPtr payload, FormPtr cont) {
  return node(FKind::WeakOut, std::move(a), {}, {}, std::move(payload), std::move(cont));
}
FormPtr Formula::mu(ProcVar x, FormPtr body) {
  return node(FKind::Mu, {}, {}, std::move(x), std::move(body), nullptr);
}

namespace {

void fn_rec(const FormPtr& f, std::vector<std::string>& shadow, std::set<std::string>& out) {
  if (!f) return;
  auto add = [&](const Name& n) {
    if (n.id.empty()) return;
    if (std::find(shadow.begin(), shadow.end(), n.id) == shadow.end()) out.insert(n.id);
  };
  switch (f->kind) {
    case FKind::FreshName:
      shadow.push_back(f->name.id);
      fn_rec(f->a, shadow, out);
      shadow.pop_back();
      return;
    case FKind::Neq:
      add(f->name);
      add(f->name2);
      return;
    default:
      add(f->name);
      fn_rec(f->a, shadow, out);
      fn_rec(f->b, shadow, out);
      return;
  }
}

void fpv_rec(const FormPtr& f, std::vector<std::string>& shadow, std::set<std::string>& out) {
  if (!f) return;
  auto visible = [&](const std::string& v) {
    return std::find(shadow.begin(), shadow.end(), v) == shadow.end();
  };
  switch (f->kind) {
    case FKind::PropVar:
      if (visible(f->var.id)) out.insert(f->var.id);
      return;
    case FKind::FreshVar:
    case FKind::Mu:
      shadow.push_back(f->var.id);
      fpv_rec(f->a, shadow, out);
      shadow.pop_back();
      return;
    case FKind::InPrefix:
    case FKind::InAdjoint:
      // The pattern variable is a free mention of that variable.
      if (visible(f->var.id)) out.insert(f->var.id);
      fpv_rec(f->a, shadow, out);
      return;
    default:
      fpv_rec(f->a, shadow, out);
      fpv_rec(f->b, shadow, out);
      return;
  }
}

}  // namespace

std::vector<std::string> fn(const FormPtr& f) {
  std::set<std::string> s;
  std::vector<std::string> shadow;
  fn_rec(f, shadow, s);
  return {s.begin(), s.end()};
}

std::vector<std::string> fpv(const FormPtr& f) {
  std::set<std::string> s;
  std::vector<std::string> shadow;
  fpv_rec(f, shadow, s);
  return {s.begin(), s.end()};
}

int formula_size(const FormPtr& f) {
  if (!f) return 0;
  return 1 + formula_size(f->a) + formula_size(f->b);
}

namespace {

const char* tag(FKind k) {
  switch (k) {
    case FKind::True: return "T";
    case FKind::False: return "F";
    case FKind::Not: return "!";
    case FKind::And: return "&";
    case FKind::DiaTau: return "dt";
    case FKind::DiaIn: return "di";
    case FKind::BoxIn: return "bi";
    case FKind::DiaOut: return "do";
    case FKind::Zero: return "z";
    case FKind::PropVar: return "pv";
    case FKind::InPrefix: return "ip";
    case FKind::InAdjoint: return "ia";
    case FKind::OutPrefix: return "op";
    case FKind::OutAdjoint: return "oa";
    case FKind::Par: return "par";
    case FKind::Guarantee: return "gr";
    case FKind::Reveal: return "rv";
    case FKind::Hide: return "hd";
    case FKind::FreshName: return "Nn";
    case FKind::FreshVar: return "Nv";
    case FKind::NotFree: return "nf";
    case FKind::NoBound: return "nb";
    case FKind::Neq: return "ne";
    case FKind::WeakEps: return "we";
    case FKind::WeakIn: return "wi";
    case FKind::WeakBoxIn: return "wb";
    case FKind::WeakOut: return "wo";
    case FKind::Mu: return "mu";
  }
  return "?";
}

void key_rec(const FormPtr& f, std::map<std::string, int>& nameLvl,
             std::map<std::string, int>& varLvl, int& next, std::string& out) {
  if (!f) return;
  out += tag(f->kind);
  auto putName = [&](const Name& n) {
    if (n.id.empty()) return;
    auto it = nameLvl.find(n.id);
    if (it != nameLvl.end()) {
      out += '#';
      out += std::to_string(it->second);
    } else {
      out += '(';
      out += n.id;
      out += ')';
    }
  };
  auto putVar = [&](const ProcVar& v) {
    if (v.id.empty()) return;
    auto it = varLvl.find(v.id);
    if (it != varLvl.end()) {
      out += '$';
      out += std::to_string(it->second);
    } else {
      out += '(';
      out += v.id;
      out += ')';
    }
  };
  switch (f->kind) {
    case FKind::FreshName: {
      out += '{';
      auto saved = nameLvl.count(f->name.id) ? std::optional<int>(nameLvl[f->name.id])
                                             : std::nullopt;
      nameLvl[f->name.id] = next++;
      key_rec(f->a, nameLvl, varLvl, next, out);
      if (saved) nameLvl[f->name.id] = *saved; else nameLvl.erase(f->name.id);
      out += '}';
      return;
    }
    case FKind::FreshVar:
    case FKind::Mu: {
      out += '{';
      auto saved = varLvl.count(f->var.id) ? std::optional<int>(varLvl[f->var.id])
                                           : std::nullopt;
      varLvl[f->var.id] = next++;
      key_rec(f->a, nameLvl, varLvl, next, out);
      if (saved) varLvl[f->var.id] = *saved; else varLvl.erase(f->var.id);
      out += '}';
      return;
    }
    default:
      putName(f->name);
      if (f->kind == FKind::Neq) putName(f->name2);
      putVar(f->var);
      if (f->a) {
        out += '[';
        key_rec(f->a, nameLvl, varLvl, next, out);
        if (f->b) {
          out += ';';
          key_rec(f->b, nameLvl, varLvl, next, out);
        }
        out += ']';
      }
      return;
  }
}

}  // namespace

std::string formula_key(const FormPtr& f) {
  std::map<std::string, int> nl, vl;
  int next = 0;
  std::string out;
  key_rec(f, nl, vl, next, out);
  return out;
}

bool formula_alpha_eq(const FormPtr& f, const FormPtr& g) {
  return f == g || formula_key(f) == formula_key(g);
}

namespace {

// Precedence: -> (1) < or (2) < and (3) < |> (4) < | (5) < postfix (6)
// < prefix/atom (7).
void print_rec(const FormPtr& f, int prec, std::string& out);

void paren(const FormPtr& f, int myPrec, int ctxPrec, const std::string& body,
           std::string& out) {
  (void)f;
  if (myPrec < ctxPrec) {
    out += '(';
    out += body;
    out += ')';
  } else {
    out += body;
  }
}

std::string render(const FormPtr& f, int prec) {
  std::string s;
  print_rec(f, prec, s);
  return s;
}

void print_rec(const FormPtr& f, int prec, std::string& out) {
  switch (f->kind) {
    case FKind::True: out += "T"; return;
    case FKind::False: out += "F"; return;
    case FKind::Not: {
      if (f->sugar == Sugar::Or) {
        // not(not A and not B)
        auto inner = f->a;
        paren(f, 2, prec, render(inner->a->a, 3) + " or " + render(inner->b->a, 2), out);
        return;
      }
      if (f->sugar == Sugar::Implies) {
        auto inner = f->a;
        paren(f, 1, prec, render(inner->a, 2) + " -> " + render(inner->b->a, 1), out);
        return;
      }
      paren(f, 7, prec, "not " + render(f->a, 7), out);
      return;
    }
    case FKind::And:
      paren(f, 3, prec, render(f->a, 4) + " and " + render(f->b, 3), out);
      return;
    case FKind::DiaTau:
      paren(f, 7, prec, "<tau>" + render(f->a, 7), out);
      return;
    case FKind::DiaIn:
      paren(f, 7, prec, "<" + f->name.id + "<" + render(f->a, 0) + ">>" + render(f->b, 7), out);
      return;
    case FKind::BoxIn:
      paren(f, 7, prec, "<" + f->name.id + "[" + render(f->a, 0) + "]>" + render(f->b, 7), out);
      return;
    case FKind::DiaOut:
      paren(f, 7, prec, "<'" + f->name.id + "<" + render(f->a, 0) + ">>" + render(f->b, 7), out);
      return;
    case FKind::Zero: out += "0"; return;
    case FKind::PropVar: out += f->var.id; return;
    case FKind::InPrefix:
      paren(f, 7, prec, "in " + f->name.id + "(" + f->var.id + ")." + render(f->a, 7), out);
      return;
    case FKind::InAdjoint:
      paren(f, 6, prec,
            render(f->a, 6) + " \\ in " + f->name.id + "(" + f->var.id + ")", out);
      return;
    case FKind::OutPrefix:
      paren(f, 7, prec,
            "out " + f->name.id + "<" + render(f->a, 0) + ">." + render(f->b, 7), out);
      return;
    case FKind::OutAdjoint:
      paren(f, 6, prec, render(f->a, 6) + " \\ out " + f->name.id, out);
      return;
    case FKind::Par:
      paren(f, 5, prec, render(f->a, 6) + " | " + render(f->b, 5), out);
      return;
    case FKind::Guarantee:
      paren(f, 4, prec, render(f->a, 5) + " |> " + render(f->b, 4), out);
      return;
    case FKind::Reveal:
      paren(f, 7, prec, f->name.id + " @ " + render(f->a, 7), out);
      return;
    case FKind::Hide:
      paren(f, 6, prec, render(f->a, 6) + " / " + f->name.id, out);
      return;
    case FKind::FreshName:
      paren(f, 7, prec, "(N " + f->name.id + ")" + render(f->a, 7), out);
      return;
    case FKind::FreshVar:
      paren(f, 7, prec, "(NV " + f->var.id + ")" + render(f->a, 7), out);
      return;
    case FKind::NotFree:
      paren(f, 7, prec, "(- " + f->name.id + ")" + render(f->a, 7), out);
      return;
    case FKind::NoBound:
      paren(f, 7, prec, "(~-)" + render(f->a, 7), out);
      return;
    case FKind::Neq:
      out += f->name.id + " != " + f->name2.id;
      return;
    case FKind::WeakEps:
      paren(f, 7, prec, "<<eps>>" + render(f->a, 7), out);
      return;
    case FKind::WeakIn:
      paren(f, 7, prec, "<<" + f->name.id + "<" + render(f->a, 0) + ">>>" + render(f->b, 7), out);
      return;
    case FKind::WeakBoxIn:
      paren(f, 7, prec, "<<" + f->name.id + "[" + render(f->a, 0) + "]>>" + render(f->b, 7), out);
      return;
    case FKind::WeakOut:
      paren(f, 7, prec,
            "<<'" + f->name.id + "<" + render(f->a, 0) + ">>>" + render(f->b, 7), out);
      return;
    case FKind::Mu:
      paren(f, 1, prec, "mu " + f->var.id + ". " + render(f->a, 1), out);
      return;
  }
}

}  // namespace

std::string print(const FormPtr& f) { return render(f, 0); }

namespace {

bool positive_rec(const FormPtr& f, const ProcVar& x, bool positive,
                  std::vector<std::string>& shadow) {
  if (!f) return true;
  auto shadowed = [&](const std::string& v) {
    return std::find(shadow.begin(), shadow.end(), v) != shadow.end();
  };
  switch (f->kind) {
    case FKind::PropVar:
      if (f->var == x && !shadowed(x.id)) return positive;
      return true;
    case FKind::Not:
      return positive_rec(f->a, x, !positive, shadow);
    case FKind::FreshVar:
    case FKind::Mu: {
      if (f->var == x) return true;  // bound below
      return positive_rec(f->a, x, positive, shadow);
    }
    case FKind::InPrefix:
    case FKind::InAdjoint: {
      if (f->var == x) {
        shadow.push_back(x.id);
        bool ok = positive_rec(f->a, x, positive, shadow);
        shadow.pop_back();
        return ok;
      }
      return positive_rec(f->a, x, positive, shadow);
    }
    default:
      return positive_rec(f->a, x, positive, shadow) &&
             positive_rec(f->b, x, positive, shadow);
  }
}

}  // namespace

bool positive_in(const FormPtr& f, const ProcVar& x) {
  std::vector<std::string> shadow;
  return positive_rec(f, x, true, shadow);
}

namespace {

bool scan(const FormPtr& f, bool& hasWeak, bool& hasStrong, bool& hasMu) {
  if (!f) return true;
  switch (f->kind) {
    case FKind::WeakEps:
    case FKind::WeakIn:
    case FKind::WeakBoxIn:
    case FKind::WeakOut: hasWeak = true; break;
    case FKind::DiaTau:
    case FKind::DiaIn:
    case FKind::BoxIn:
    case FKind::DiaOut: hasStrong = true; break;
    case FKind::Mu: hasMu = true; break;
    default: break;
  }
  scan(f->a, hasWeak, hasStrong, hasMu);
  scan(f->b, hasWeak, hasStrong, hasMu);
  return true;
}

}  // namespace

bool in_dialect(const FormPtr& f, Dialect d) {
  bool w = false, s = false, m = false;
  scan(f, w, s, m);
  switch (d) {
    case Dialect::SL: return !w && !m;
    case Dialect::WL: return !s && !m;
    case Dialect::MuSL: return !w;
  }
  return false;
}

std::optional<Dialect> dialect_of(const FormPtr& f) {
  bool w = false, s = false, m = false;
  scan(f, w, s, m);
  if (!w && !m) return Dialect::SL;
  if (!s && !m) return Dialect::WL;
  if (!w) return Dialect::MuSL;
  return std::nullopt;
}

bool in_sublogic_L(const FormPtr& f) {
  switch (f->kind) {
    case FKind::Not: return in_sublogic_L(f->a);
    case FKind::And: return in_sublogic_L(f->a) && in_sublogic_L(f->b);
    case FKind::DiaTau: return in_sublogic_L(f->a);
    case FKind::DiaIn:
    case FKind::DiaOut:
      return f->a->kind == FKind::True && f->b->kind == FKind::True;
    case FKind::Guarantee: return in_sublogic_L(f->a) && in_sublogic_L(f->b);
    default: return false;
  }
}

std::string fresh_formula_name(const std::vector<std::string>& avoid, const std::string& base) {
  return fresh_ident(avoid, base);
}

namespace {

// All names and variables occurring anywhere (free or bound), for choosing
// fresh binders during substitution.
void all_idents_rec(const FormPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (!f->name.id.empty()) out.insert(f->name.id);
  if (!f->name2.id.empty()) out.insert(f->name2.id);
  if (!f->var.id.empty()) out.insert(f->var.id);
  all_idents_rec(f->a, out);
  all_idents_rec(f->b, out);
}

std::vector<std::string> all_idents(const FormPtr& f) {
  std::set<std::string> s;
  all_idents_rec(f, s);
  return {s.begin(), s.end()};
}

FormPtr rebuild(const FormPtr& f, FormPtr a, FormPtr b) {
  switch (f->kind) {
    case FKind::True: return Formula::truth();
    case FKind::False: return Formula::falsity();
    case FKind::Not:
      return node(FKind::Not, {}, {}, {}, std::move(a), nullptr, f->sugar);
    case FKind::And: return Formula::land(std::move(a), std::move(b));
    case FKind::DiaTau: return Formula::dia_tau(std::move(a));
    case FKind::DiaIn: return Formula::dia_in(f->name, std::move(a), std::move(b));
    case FKind::BoxIn: return Formula::box_in(f->name, std::move(a), std::move(b));
    case FKind::DiaOut: return Formula::dia_out(f->name, std::move(a), std::move(b));
    case FKind::Zero: return Formula::zero();
    case FKind::PropVar: return Formula::propvar(f->var);
    case FKind::InPrefix: return Formula::in_prefix(f->name, f->var, std::move(a));
    case FKind::InAdjoint: return Formula::in_adjoint(std::move(a), f->name, f->var);
    case FKind::OutPrefix: return Formula::out_prefix(f->name, std::move(a), std::move(b));
    case FKind::OutAdjoint: return Formula::out_adjoint(std::move(a), f->name);
    case FKind::Par: return Formula::par(std::move(a), std::move(b));
    case FKind::Guarantee: return Formula::guarantee(std::move(a), std::move(b));
    case FKind::Reveal: return Formula::reveal(f->name, std::move(a));
    case FKind::Hide: return Formula::hide(std::move(a), f->name);
    case FKind::FreshName: return Formula::fresh_name(f->name, std::move(a));
    case FKind::FreshVar: return Formula::fresh_var(f->var, std::move(a));
    case FKind::NotFree: return Formula::not_free(f->name, std::move(a));
    case FKind::NoBound: return Formula::no_bound(std::move(a));
    case FKind::Neq: return Formula::neq(f->name, f->name2);
    case FKind::WeakEps: return Formula::weak_eps(std::move(a));
    case FKind::WeakIn: return Formula::weak_in(f->name, std::move(a), std::move(b));
    case FKind::WeakBoxIn: return Formula::weak_box_in(f->name, std::move(a), std::move(b));
    case FKind::WeakOut: return Formula::weak_out(f->name, std::move(a), std::move(b));
    case FKind::Mu: return Formula::mu(f->var, std::move(a));
  }
  return f;
}

FormPtr with_name(const FormPtr& f, const Name& n, FormPtr a, FormPtr b) {
  FormPtr r = rebuild(f, std::move(a), std::move(b));
  return node(r->kind, n, r->name2, r->var, r->a, r->b, r->sugar);
}

}  // namespace

FormPtr formula_rename_name(const FormPtr& f, const Name& from, const Name& to) {
  if (!f || from == to) return f;
  switch (f->kind) {
    case FKind::FreshName: {
      if (f->name == from) return f;  // shadowed
      if (f->name == to) {
        // Freshen the quantifier binder so it cannot capture.
        auto avoid = all_idents(f);
        avoid.push_back(from.id);
        avoid.push_back(to.id);
        Name nb{fresh_ident(avoid, f->name.id)};
        FormPtr body = formula_rename_name(f->a, f->name, nb);
        return Formula::fresh_name(nb, formula_rename_name(body, from, to));
      }
      return Formula::fresh_name(f->name, formula_rename_name(f->a, from, to));
    }
    case FKind::Neq: {
      Name l = f->name == from ? to : f->name;
      Name r = f->name2 == from ? to : f->name2;
      return Formula::neq(l, r);
    }
    default: {
      FormPtr a = formula_rename_name(f->a, from, to);
      FormPtr b = formula_rename_name(f->b, from, to);
      Name n = f->name == from ? to : f->name;
      return with_name(f, n, std::move(a), std::move(b));
    }
  }
}

namespace {

// Whether a free (unshadowed) occurrence of x is reachable by the variable
// renaming/substitution recursion.
bool var_reachable(const FormPtr& f, const ProcVar& x) {
  if (!f) return false;
  switch (f->kind) {
    case FKind::PropVar: return f->var == x;
    case FKind::FreshVar:
    case FKind::Mu:
    case FKind::InPrefix:
    case FKind::InAdjoint:
      if (f->var == x) return false;  // shadowed
      return var_reachable(f->a, x);
    default:
      return var_reachable(f->a, x) || var_reachable(f->b, x);
  }
}

}  // namespace

FormPtr formula_rename_var(const FormPtr& f, const ProcVar& from, const ProcVar& to) {
  if (!f || from == to) return f;
  auto freshened_pattern = [&](const FormPtr& g) -> FormPtr {
    // The pattern variable equals the rename target and the body still has
    // reachable occurrences of `from`: rename the pattern away first.
    auto avoid = all_idents(g);
    avoid.push_back(from.id);
    avoid.push_back(to.id);
    ProcVar nb{fresh_ident(avoid, g->var.id)};
    FormPtr body = formula_rename_var(g->a, g->var, nb);
    return g->kind == FKind::InPrefix ? Formula::in_prefix(g->name, nb, body)
                                      : Formula::in_adjoint(body, g->name, nb);
  };
  switch (f->kind) {
    case FKind::PropVar:
      return f->var == from ? Formula::propvar(to) : f;
    case FKind::FreshVar:
    case FKind::Mu: {
      if (f->var == from) return f;  // shadowed
      if (f->var == to && var_reachable(f->a, from)) {
        auto avoid = all_idents(f);
        avoid.push_back(from.id);
        avoid.push_back(to.id);
        ProcVar nb{fresh_ident(avoid, f->var.id)};
        FormPtr body = formula_rename_var(f->a, f->var, nb);
        FormPtr renamed = formula_rename_var(body, from, to);
        return f->kind == FKind::Mu ? Formula::mu(nb, renamed)
                                    : Formula::fresh_var(nb, renamed);
      }
      FormPtr body = formula_rename_var(f->a, from, to);
      return f->kind == FKind::Mu ? Formula::mu(f->var, body)
                                  : Formula::fresh_var(f->var, body);
    }
    case FKind::InPrefix:
    case FKind::InAdjoint: {
      FormPtr cur = f;
      if (cur->var == from) return cur;  // the pattern shadows its body
      if (cur->var == to && var_reachable(cur->a, from)) cur = freshened_pattern(cur);
      FormPtr body = formula_rename_var(cur->a, from, to);
      return cur->kind == FKind::InPrefix
                 ? Formula::in_prefix(cur->name, cur->var, body)
                 : Formula::in_adjoint(body, cur->name, cur->var);
    }
    default: {
      FormPtr a = formula_rename_var(f->a, from, to);
      FormPtr b = formula_rename_var(f->b, from, to);
      return rebuild(f, std::move(a), std::move(b));
    }
  }
}

FormPtr formula_subst(const FormPtr& f, const ProcVar& x, const FormPtr& repl) {
  if (!f) return f;
  switch (f->kind) {
    case FKind::PropVar:
      return f->var == x ? repl : f;
    case FKind::FreshVar:
    case FKind::Mu: {
      if (f->var == x) return f;  // shadowed
      auto rfpv = fpv(repl);
      if (std::find(rfpv.begin(), rfpv.end(), f->var.id) != rfpv.end()) {
        auto avoid = all_idents(f);
        avoid.insert(avoid.end(), rfpv.begin(), rfpv.end());
        ProcVar nb{fresh_ident(avoid, f->var.id)};
        FormPtr body = formula_rename_var(f->a, f->var, nb);
        FormPtr sub = formula_subst(body, x, repl);
        return f->kind == FKind::Mu ? Formula::mu(nb, sub) : Formula::fresh_var(nb, sub);
      }
      FormPtr sub = formula_subst(f->a, x, repl);
      return f->kind == FKind::Mu ? Formula::mu(f->var, sub)
                                  : Formula::fresh_var(f->var, sub);
    }
    case FKind::FreshName: {
      auto rfn = fn(repl);
      if (std::find(rfn.begin(), rfn.end(), f->name.id) != rfn.end()) {
        auto avoid = all_idents(f);
        avoid.insert(avoid.end(), rfn.begin(), rfn.end());
        Name nb{fresh_ident(avoid, f->name.id)};
        FormPtr body = formula_rename_name(f->a, f->name, nb);
        return Formula::fresh_name(nb, formula_subst(body, x, repl));
      }
      return Formula::fresh_name(f->name, formula_subst(f->a, x, repl));
    }
    case FKind::InPrefix:
    case FKind::InAdjoint: {
      FormPtr cur = f;
      if (cur->var == x) return cur;  // the pattern shadows its body
      auto rfpv = fpv(repl);
      if (std::find(rfpv.begin(), rfpv.end(), cur->var.id) != rfpv.end() &&
          var_reachable(cur->a, x)) {
        auto avoid = all_idents(cur);
        avoid.insert(avoid.end(), rfpv.begin(), rfpv.end());
        ProcVar nb{fresh_ident(avoid, cur->var.id)};
        FormPtr body = formula_rename_var(cur->a, cur->var, nb);
        cur = cur->kind == FKind::InPrefix ? Formula::in_prefix(cur->name, nb, body)
                                           : Formula::in_adjoint(body, cur->name, nb);
      }
      FormPtr body = formula_subst(cur->a, x, repl);
      return cur->kind == FKind::InPrefix
                 ? Formula::in_prefix(cur->name, cur->var, body)
                 : Formula::in_adjoint(body, cur->name, cur->var);
    }
    default: {
      FormPtr a = formula_subst(f->a, x, repl);
      FormPtr b = formula_subst(f->b, x, repl);
      return rebuild(f, std::move(a), std::move(b));
    }
  }
}

}  // namespace hopi
