#include "hopi/translate.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopi {

std::optional<ProcPtr> as_process(const FormPtr& f) {
  switch (f->kind) {
    case FKind::Zero: return Process::nil();
    case FKind::PropVar: return Process::mkvar(f->var);
    case FKind::InPrefix: {
      auto body = as_process(f->a);
      if (!body) return std::nullopt;
      return Process::input(f->name, f->var, *body);
    }
    case FKind::OutPrefix: {
      auto payload = as_process(f->a);
      auto cont = as_process(f->b);
      if (!payload || !cont) return std::nullopt;
      return Process::output(f->name, *payload, *cont);
    }
    case FKind::Par: {
      auto l = as_process(f->a);
      auto r = as_process(f->b);
      if (!l || !r) return std::nullopt;
      return Process::par(*l, *r);
    }
    case FKind::Reveal: {
      auto body = as_process(f->a);
      if (!body) return std::nullopt;
      return Process::res(f->name, *body);
    }
    default: return std::nullopt;
  }
}

FormPtr embed_process(const ProcPtr& p) {
  switch (p->kind) {
    case PKind::Nil: return Formula::zero();
    case PKind::Var: return Formula::propvar(p->var);
    case PKind::Input:
      return Formula::in_prefix(p->name, p->var, embed_process(p->a));
    case PKind::Output:
      return Formula::out_prefix(p->name, embed_process(p->a), embed_process(p->b));
    case PKind::Par:
      return Formula::par(embed_process(p->a), embed_process(p->b));
    case PKind::Res:
      return Formula::reveal(p->name, embed_process(p->a));
  }
  return Formula::zero();
}

FormPtr translate_tps(const ProcPtr& p) {
  switch (p->kind) {
    case PKind::Nil: return Formula::zero();
    case PKind::Var: return Formula::propvar(p->var);
    case PKind::Input:
      return Formula::fresh_var(
          p->var, Formula::in_prefix(p->name, p->var, translate_tps(p->a)));
    case PKind::Output:
      return Formula::out_prefix(p->name, translate_tps(p->a), translate_tps(p->b));
    case PKind::Par:
      return Formula::par(translate_tps(p->a), translate_tps(p->b));
    case PKind::Res:
      return Formula::fresh_name(
          p->name, Formula::reveal(p->name, translate_tps(p->a)));
  }
  return Formula::zero();
}

namespace {

ProcVar fresh_mu_var(const FormPtr& scope, const char* base) {
  std::vector<std::string> avoid = fpv(scope);
  return ProcVar{fresh_ident(avoid, base)};
}

FormPtr eventually(const FormPtr& body) {
  // mu Y. (body or <tau>Y)
  ProcVar y = fresh_mu_var(body, "Y");
  return Formula::mu(y, Formula::lor(body, Formula::dia_tau(Formula::propvar(y))));
}

}  // namespace

FormPtr translate_twm(const FormPtr& f) {
  if (!f) return f;
  if (!in_dialect(f, Dialect::WL))
    throw std::invalid_argument("translate_twm: input must be a weak-dialect formula");
  struct Go {
    FormPtr operator()(const FormPtr& g) const {
      if (!g) return g;
      switch (g->kind) {
        case FKind::WeakEps:
          return eventually((*this)(g->a));
        case FKind::WeakIn: {
          FormPtr inner = Formula::dia_in(g->name, (*this)(g->a), eventually((*this)(g->b)));
          return eventually(inner);
        }
        case FKind::WeakBoxIn: {
          FormPtr inner = Formula::box_in(g->name, (*this)(g->a), eventually((*this)(g->b)));
          return eventually(inner);
        }
        case FKind::WeakOut: {
          FormPtr inner = Formula::dia_out(g->name, (*this)(g->a), eventually((*this)(g->b)));
          return eventually(inner);
        }
        case FKind::InPrefix:
          return Formula::in_prefix(g->name, g->var, (*this)(g->a));
        case FKind::InAdjoint:
          return Formula::in_adjoint((*this)(g->a), g->name, g->var);
        case FKind::FreshName:
          return Formula::fresh_name(g->name, (*this)(g->a));
        case FKind::FreshVar:
          return Formula::fresh_var(g->var, (*this)(g->a));
        default: {
          // Homomorphic on every remaining constructor.
          FormPtr a = g->a ? (*this)(g->a) : nullptr;
          FormPtr b = g->b ? (*this)(g->b) : nullptr;
          if (!a && !b) return g;
          auto r = std::make_shared<Formula>(*g);
          r->a = a;
          r->b = b;
          return r;
        }
      }
    }
  };
  FormPtr out = Go{}(f);
  if (!in_dialect(out, Dialect::MuSL))
    throw std::logic_error("translate_twm: produced a non-fixpoint-dialect formula");
  return out;
}

FormPtr bang(const FormPtr& a) {
  ProcVar x = fresh_mu_var(a, "X");
  return Formula::lnot(Formula::mu(
      x, Formula::lnot(Formula::par(a, Formula::lnot(Formula::propvar(x))))));
}

}  // namespace hopi
