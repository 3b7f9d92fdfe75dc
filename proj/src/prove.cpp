#include "hopi/prove.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "hopi/canonical.hpp"
#include "hopi/translate.hpp"

namespace hopi::proofs {

namespace {

using F = Formula;

[[noreturn]] void bug(const std::string& what) {
  throw std::logic_error("proof generation: " + what);
}

struct Builder {
  Proof pf;

  int add(Step st) {
    pf.steps.push_back(std::move(st));
    return static_cast<int>(pf.steps.size());
  }
  const FormPtr& at(int i) const { return pf.steps[i - 1].formula; }

  int premise(int k, FormPtr f) {
    Step st;
    st.kind = Step::Premise;
    st.cite1 = k;
    st.formula = std::move(f);
    return add(st);
  }
  int taut(FormPtr f) {
    Step st;
    st.kind = Step::Taut;
    st.formula = std::move(f);
    return add(st);
  }
  int axiom(const std::string& id, Bindings b) {
    Step st;
    st.kind = Step::Axiom;
    st.id = id;
    st.formula = instantiate_axiom(id, b);
    st.bindings = std::move(b);
    return add(st);
  }
  int mp(int i, int j) {
    FormPtr l, r;
    if (!is_implication(at(j), l, r)) bug("mp: second premise not an implication");
    if (!formula_alpha_eq(l, at(i))) bug("mp: premises do not match");
    Step st;
    st.kind = Step::MP;
    st.cite1 = i;
    st.cite2 = j;
    st.formula = r;
    return add(st);
  }
  int rule(const std::string& id, std::vector<int> cites, FormPtr concl) {
    const RuleSpec* spec = find_rule(id);
    if (!spec) bug("unknown rule " + id);
    std::vector<FormPtr> prem;
    for (int c : cites) prem.push_back(at(c));
    std::string err = spec->check(prem, concl);
    if (!err.empty()) bug("rule " + id + ": " + err);
    Step st;
    st.kind = Step::Rule;
    st.id = id;
    st.cites = std::move(cites);
    st.formula = std::move(concl);
    return add(st);
  }
  int muind(int i, FormPtr concl) {
    Step st;
    st.kind = Step::MuInd;
    st.cite1 = i;
    st.formula = std::move(concl);
    return add(st);
  }

  int compose(int a, int b) {
    FormPtr xl, xr, yl, yr;
    if (!is_implication(at(a), xl, xr) || !is_implication(at(b), yl, yr))
      bug("compose: premises are not implications");
    if (!formula_alpha_eq(xr, yl)) bug("compose: middle formulas differ");
    return taut(F::implies(xl, yr));
  }
  int compose3(int a, int b, int c) { return compose(compose(a, b), c); }

  int iff_fwd(int i) {
    const FormPtr& f = at(i);
    if (f->kind != FKind::And) bug("iff_fwd: not a conjunction");
    return taut(f->a);
  }
  int iff_bwd(int i) {
    const FormPtr& f = at(i);
    if (f->kind != FKind::And) bug("iff_bwd: not a conjunction");
    return taut(f->b);
  }
  int conj2(int i, int j) { return taut(F::land(at(i), at(j))); }
};

FormPtr emb(const ProcPtr& p) { return embed_process(p); }

bool keys_equal(const FormPtr& a, const FormPtr& b) {
  return formula_key(a) == formula_key(b);
}

int neq_taut(Builder& bld, const Name& a, const Name& b) {
  if (a == b) bug("neq_taut: names equal");
  return bld.taut(F::neq(a, b));
}

int lift_par_left(Builder& bld, int imp, const FormPtr& c) {
  FormPtr l, r;
  is_implication(bld.at(imp), l, r);
  return bld.rule("mono-par", {imp}, F::implies(F::par(l, c), F::par(r, c)));
}

int lift_par_right(Builder& bld, int imp, const FormPtr& c) {
  FormPtr l, r;
  is_implication(bld.at(imp), l, r);
  Bindings b1;
  b1.formulas["A"] = c;
  b1.formulas["B"] = l;
  int commIn = bld.iff_fwd(bld.axiom("par-comm", b1));
  int mid = lift_par_left(bld, imp, c);
  Bindings b2;
  b2.formulas["A"] = r;
  b2.formulas["B"] = c;
  int commOut = bld.iff_fwd(bld.axiom("par-comm", b2));
  return bld.compose3(commIn, mid, commOut);
}

// ---------------------------------------------------------------------
// Freeness bridges.

int bridge_notfree(Builder& bld, const ProcPtr& m, const Name& a, bool elim) {
  if (has_free_name(m, a)) bug("bridge_notfree: name is free");
  switch (m->kind) {
    case PKind::Nil: {
      Bindings b;
      b.names["a"] = a;
      int ax = bld.axiom("notfree-zero", b);
      return elim ? bld.iff_fwd(ax) : bld.iff_bwd(ax);
    }
    case PKind::Var: {
      Bindings b;
      b.names["a"] = a;
      b.vars["X"] = m->var;
      int ax = bld.axiom("notfree-var", b);
      return elim ? bld.iff_fwd(ax) : bld.iff_bwd(ax);
    }
    case PKind::Input: {
      Bindings b;
      b.names["a"] = a;
      b.names["b"] = m->name;
      b.vars["X"] = m->var;
      b.formulas["A"] = emb(m->a);
      int iff = bld.mp(neq_taut(bld, a, m->name), bld.axiom("notfree-in-other", b));
      int child = bridge_notfree(bld, m->a, a, elim);
      FormPtr cl, cr;
      is_implication(bld.at(child), cl, cr);
      int lifted = bld.rule("in-mono-imp", {child},
                            F::implies(F::in_prefix(m->name, m->var, cl),
                                       F::in_prefix(m->name, m->var, cr)));
      return elim ? bld.compose(bld.iff_fwd(iff), lifted)
                  : bld.compose(lifted, bld.iff_bwd(iff));
    }
    case PKind::Output: {
      Bindings b;
      b.names["a"] = a;
      b.names["b"] = m->name;
      b.formulas["B"] = emb(m->a);
      b.formulas["A"] = emb(m->b);
      int iff = bld.mp(neq_taut(bld, a, m->name), bld.axiom("notfree-out-other", b));
      int childE = bridge_notfree(bld, m->a, a, elim);
      int childK = bridge_notfree(bld, m->b, a, elim);
      FormPtr el, er, kl, kr;
      is_implication(bld.at(childE), el, er);
      is_implication(bld.at(childK), kl, kr);
      int liftE = bld.rule(
          "out-payload-imp", {childE},
          F::implies(F::out_prefix(m->name, el, F::not_free(a, emb(m->b))),
                     F::out_prefix(m->name, er, F::not_free(a, emb(m->b)))));
      FormPtr pay = elim ? emb(m->a) : F::not_free(a, emb(m->a));
      int liftK = bld.rule("out-cont-imp", {childK},
                           F::implies(F::out_prefix(m->name, pay, kl),
                                      F::out_prefix(m->name, pay, kr)));
      return elim ? bld.compose3(bld.iff_fwd(iff), liftE, liftK)
                  : bld.compose3(liftK, liftE, bld.iff_bwd(iff));
    }
    case PKind::Par: {
      Bindings b;
      b.names["a"] = a;
      b.formulas["A"] = emb(m->a);
      b.formulas["B"] = emb(m->b);
      int iff = bld.axiom("notfree-par", b);
      int childL = bridge_notfree(bld, m->a, a, elim);
      int childR = bridge_notfree(bld, m->b, a, elim);
      if (elim) {
        int split = bld.iff_bwd(iff);
        int liftL = lift_par_left(bld, childL, F::not_free(a, emb(m->b)));
        int liftR = lift_par_right(bld, childR, emb(m->a));
        return bld.compose3(split, liftL, liftR);
      }
      int liftL = lift_par_left(bld, childL, emb(m->b));
      int liftR = lift_par_right(bld, childR, F::not_free(a, emb(m->a)));
      return bld.compose3(liftL, liftR, bld.iff_fwd(iff));
    }
    case PKind::Res: {
      Bindings b;
      b.names["a"] = a;
      b.names["b"] = m->name;
      b.formulas["A"] = emb(m->a);
      int iff = bld.mp(neq_taut(bld, a, m->name), bld.axiom("notfree-rev-other", b));
      int child = bridge_notfree(bld, m->a, a, elim);
      FormPtr cl, cr;
      is_implication(bld.at(child), cl, cr);
      int lifted = bld.rule("rev-mono-imp", {child},
                            F::implies(F::reveal(m->name, cl), F::reveal(m->name, cr)));
      return elim ? bld.compose(bld.iff_fwd(iff), lifted)
                  : bld.compose(lifted, bld.iff_bwd(iff));
    }
  }
  bug("bridge_notfree: unreachable");
}

int bridge_notfree_iff(Builder& bld, const ProcPtr& m, const Name& a) {
  return bld.conj2(bridge_notfree(bld, m, a, true), bridge_notfree(bld, m, a, false));
}

int bridge_nobound(Builder& bld, const ProcPtr& m, bool elim) {
  if (!restriction_free(m)) bug("bridge_nobound: term has restrictions");
  switch (m->kind) {
    case PKind::Nil: {
      int ax = bld.axiom("nobound-zero", {});
      return elim ? bld.iff_fwd(ax) : bld.iff_bwd(ax);
    }
    case PKind::Var: {
      Bindings b;
      b.vars["X"] = m->var;
      int ax = bld.axiom("nobound-var", b);
      return elim ? bld.iff_fwd(ax) : bld.iff_bwd(ax);
    }
    case PKind::Input: {
      Bindings b;
      b.names["a"] = m->name;
      b.vars["X"] = m->var;
      b.formulas["A"] = emb(m->a);
      int iff = bld.axiom("nobound-in", b);
      int child = bridge_nobound(bld, m->a, elim);
      FormPtr cl, cr;
      is_implication(bld.at(child), cl, cr);
      int lifted = bld.rule("in-mono-imp", {child},
                            F::implies(F::in_prefix(m->name, m->var, cl),
                                       F::in_prefix(m->name, m->var, cr)));
      return elim ? bld.compose(bld.iff_fwd(iff), lifted)
                  : bld.compose(lifted, bld.iff_bwd(iff));
    }
    case PKind::Output: {
      Bindings b;
      b.names["a"] = m->name;
      b.formulas["B"] = emb(m->a);
      b.formulas["A"] = emb(m->b);
      int iff = bld.axiom("nobound-out", b);
      int childE = bridge_nobound(bld, m->a, elim);
      int childK = bridge_nobound(bld, m->b, elim);
      FormPtr el, er, kl, kr;
      is_implication(bld.at(childE), el, er);
      is_implication(bld.at(childK), kl, kr);
      int liftE = bld.rule(
          "out-payload-imp", {childE},
          F::implies(F::out_prefix(m->name, el, F::no_bound(emb(m->b))),
                     F::out_prefix(m->name, er, F::no_bound(emb(m->b)))));
      FormPtr pay = elim ? emb(m->a) : F::no_bound(emb(m->a));
      int liftK = bld.rule("out-cont-imp", {childK},
                           F::implies(F::out_prefix(m->name, pay, kl),
                                      F::out_prefix(m->name, pay, kr)));
      return elim ? bld.compose3(bld.iff_fwd(iff), liftE, liftK)
                  : bld.compose3(liftK, liftE, bld.iff_bwd(iff));
    }
    case PKind::Par: {
      Bindings b;
      b.formulas["A"] = emb(m->a);
      b.formulas["B"] = emb(m->b);
      int iff = bld.axiom("nobound-par", b);
      int childL = bridge_nobound(bld, m->a, elim);
      int childR = bridge_nobound(bld, m->b, elim);
      if (elim) {
        int split = bld.iff_bwd(iff);
        int liftL = lift_par_left(bld, childL, F::no_bound(emb(m->b)));
        int liftR = lift_par_right(bld, childR, emb(m->a));
        return bld.compose3(split, liftL, liftR);
      }
      int liftL = lift_par_left(bld, childL, emb(m->b));
      int liftR = lift_par_right(bld, childR, F::no_bound(emb(m->a)));
      return bld.compose3(liftL, liftR, bld.iff_fwd(iff));
    }
    case PKind::Res:
      break;
  }
  bug("bridge_nobound: unreachable");
}

int bridge_nobound_iff(Builder& bld, const ProcPtr& m) {
  return bld.conj2(bridge_nobound(bld, m, true), bridge_nobound(bld, m, false));
}

int notfree_bot(Builder& bld, const ProcPtr& m, const Name& b) {
  if (!has_free_name(m, b)) bug("notfree_bot: name not free");
  switch (m->kind) {
    case PKind::Input: {
      if (m->name == b) {
        Bindings bb;
        bb.names["a"] = b;
        bb.vars["X"] = m->var;
        bb.formulas["A"] = emb(m->a);
        return bld.iff_fwd(bld.axiom("notfree-in-same", bb));
      }
      Bindings bb;
      bb.names["a"] = b;
      bb.names["b"] = m->name;
      bb.vars["X"] = m->var;
      bb.formulas["A"] = emb(m->a);
      int iff = bld.mp(neq_taut(bld, b, m->name), bld.axiom("notfree-in-other", bb));
      int child = notfree_bot(bld, m->a, b);
      int lifted = bld.rule(
          "in-mono-imp", {child},
          F::implies(F::in_prefix(m->name, m->var, F::not_free(b, emb(m->a))),
                     F::in_prefix(m->name, m->var, F::falsity())));
      Bindings bot;
      bot.names["a"] = m->name;
      bot.vars["X"] = m->var;
      return bld.compose3(bld.iff_fwd(iff), lifted, bld.axiom("bot-in-prefix", bot));
    }
    case PKind::Output: {
      if (m->name == b) {
        Bindings bb;
        bb.names["a"] = b;
        bb.formulas["B"] = emb(m->a);
        bb.formulas["A"] = emb(m->b);
        return bld.iff_fwd(bld.axiom("notfree-out-same", bb));
      }
      Bindings bb;
      bb.names["a"] = b;
      bb.names["b"] = m->name;
      bb.formulas["B"] = emb(m->a);
      bb.formulas["A"] = emb(m->b);
      int iff = bld.mp(neq_taut(bld, b, m->name), bld.axiom("notfree-out-other", bb));
      int start = bld.iff_fwd(iff);
      FormPtr nfE = F::not_free(b, emb(m->a));
      FormPtr nfK = F::not_free(b, emb(m->b));
      if (has_free_name(m->a, b)) {
        int child = notfree_bot(bld, m->a, b);
        int liftE = bld.rule("out-payload-imp", {child},
                             F::implies(F::out_prefix(m->name, nfE, nfK),
                                        F::out_prefix(m->name, F::falsity(), nfK)));
        int contTop = bld.taut(F::implies(nfK, F::truth()));
        int liftK = bld.rule(
            "out-cont-imp", {contTop},
            F::implies(F::out_prefix(m->name, F::falsity(), nfK),
                       F::out_prefix(m->name, F::falsity(), F::truth())));
        Bindings bot;
        bot.names["a"] = m->name;
        return bld.compose(bld.compose3(start, liftE, liftK),
                           bld.axiom("bot-out-payload", bot));
      }
      int child = notfree_bot(bld, m->b, b);
      int liftK = bld.rule("out-cont-imp", {child},
                           F::implies(F::out_prefix(m->name, nfE, nfK),
                                      F::out_prefix(m->name, nfE, F::falsity())));
      int payTop = bld.taut(F::implies(nfE, F::truth()));
      int liftE = bld.rule(
          "out-payload-imp", {payTop},
          F::implies(F::out_prefix(m->name, nfE, F::falsity()),
                     F::out_prefix(m->name, F::truth(), F::falsity())));
      Bindings bot;
      bot.names["a"] = m->name;
      return bld.compose(bld.compose3(start, liftK, liftE),
                         bld.axiom("bot-out-cont", bot));
    }
    case PKind::Par: {
      Bindings bb;
      bb.names["a"] = b;
      bb.formulas["A"] = emb(m->a);
      bb.formulas["B"] = emb(m->b);
      int split = bld.iff_bwd(bld.axiom("notfree-par", bb));
      FormPtr nfL = F::not_free(b, emb(m->a));
      FormPtr nfR = F::not_free(b, emb(m->b));
      if (has_free_name(m->a, b)) {
        int child = notfree_bot(bld, m->a, b);
        int liftL = lift_par_left(bld, child, nfR);
        Bindings comm;
        comm.formulas["A"] = F::falsity();
        comm.formulas["B"] = nfR;
        int flip = bld.iff_fwd(bld.axiom("par-comm", comm));
        Bindings bot;
        bot.formulas["A"] = nfR;
        return bld.compose(bld.compose3(split, liftL, flip), bld.axiom("bot-par", bot));
      }
      int child = notfree_bot(bld, m->b, b);
      int liftR = lift_par_right(bld, child, nfL);
      Bindings bot;
      bot.formulas["A"] = nfL;
      return bld.compose3(split, liftR, bld.axiom("bot-par", bot));
    }
    case PKind::Res: {
      Bindings bb;
      bb.names["a"] = b;
      bb.names["b"] = m->name;
      bb.formulas["A"] = emb(m->a);
      int iff = bld.mp(neq_taut(bld, b, m->name), bld.axiom("notfree-rev-other", bb));
      int child = notfree_bot(bld, m->a, b);
      int lifted = bld.rule("rev-mono-imp", {child},
                            F::implies(F::reveal(m->name, F::not_free(b, emb(m->a))),
                                       F::reveal(m->name, F::falsity())));
      Bindings bot;
      bot.names["a"] = m->name;
      return bld.compose3(bld.iff_fwd(iff), lifted, bld.axiom("bot-rev", bot));
    }
    default:
      break;
  }
  bug("notfree_bot: unreachable");
}

// [E] -> not (- b)T, witnessing that b occurs free in E.
int occurs_premise(Builder& bld, const ProcPtr& e, const Name& b) {
  int toBot = notfree_bot(bld, e, b);  // (- b)[E] -> F
  Bindings cb;
  cb.names["a"] = b;
  cb.formulas["A"] = emb(e);
  int conjAx = bld.axiom("notfree-conj", cb);  // ((- b)T and [E]) <-> (- b)[E]
  FormPtr goal = F::implies(emb(e), F::lnot(F::not_free(b, F::truth())));
  // goal follows propositionally from toBot and the forward half of conjAx
  int half = bld.iff_fwd(conjAx);
  (void)toBot;
  (void)half;
  return bld.taut(goal);
}

// ---------------------------------------------------------------------
// Congruence implications from rewrite traces.

int lift_through_path(Builder& bld, int imp, const ProcPtr& before, const ProcPtr& after,
                      const std::vector<int>& path) {
  int cur = imp;
  for (int i = static_cast<int>(path.size()) - 1; i >= 0; i--) {
    std::vector<int> prefix(path.begin(), path.begin() + i);
    ProcPtr nb = subterm_at(before, prefix);
    ProcPtr na = subterm_at(after, prefix);
    int dir = path[i];
    FormPtr cl, cr;
    is_implication(bld.at(cur), cl, cr);
    switch (nb->kind) {
      case PKind::Par:
        cur = dir == 0 ? lift_par_left(bld, cur, emb(nb->b))
                       : lift_par_right(bld, cur, emb(nb->a));
        break;
      case PKind::Res:
        cur = bld.rule("rev-mono-imp", {cur},
                       F::implies(F::reveal(nb->name, cl), F::reveal(nb->name, cr)));
        break;
      case PKind::Input:
        cur = bld.rule("in-mono-imp", {cur},
                       F::implies(F::in_prefix(nb->name, nb->var, cl),
                                  F::in_prefix(nb->name, nb->var, cr)));
        break;
      case PKind::Output:
        if (dir == 0) {
          cur = bld.rule("out-payload-imp", {cur},
                         F::implies(F::out_prefix(nb->name, cl, emb(nb->b)),
                                    F::out_prefix(nb->name, cr, emb(nb->b))));
        } else {
          cur = bld.rule("out-cont-imp", {cur},
                         F::implies(F::out_prefix(nb->name, emb(nb->a), cl),
                                    F::out_prefix(nb->name, emb(nb->a), cr)));
        }
        break;
      default:
        bug("lift_through_path: bad context node");
    }
    FormPtr gl, gr;
    is_implication(bld.at(cur), gl, gr);
    if (!keys_equal(gl, emb(nb)) || !keys_equal(gr, emb(na)))
      bug("lift_through_path: lifted implication mismatch");
  }
  return cur;
}

int redex_implication(Builder& bld, const RewriteStep& rs, bool forward) {
  const ProcPtr& before = forward ? rs.before : rs.after;
  const ProcPtr& after = forward ? rs.after : rs.before;
  ProcPtr l = subterm_at(before, rs.path);
  ProcPtr r = subterm_at(after, rs.path);
  auto project = [&](int iffStep) {
    return forward ? bld.iff_fwd(iffStep) : bld.iff_bwd(iffStep);
  };

  switch (rs.kind) {
    case RewriteStep::ParComm: {
      Bindings b;
      b.formulas["A"] = emb(l->a);
      b.formulas["B"] = emb(l->b);
      return bld.iff_fwd(bld.axiom("par-comm", b));
    }
    case RewriteStep::ParAssocLR:
    case RewriteStep::ParAssocRL: {
      bool lr = (rs.kind == RewriteStep::ParAssocLR) == forward;
      ProcPtr nested = lr ? l : r;
      Bindings b;
      b.formulas["A"] = emb(nested->a->a);
      b.formulas["B"] = emb(nested->a->b);
      b.formulas["C"] = emb(nested->b);
      int axi = bld.axiom("par-assoc", b);
      return lr ? bld.iff_fwd(axi) : bld.iff_bwd(axi);
    }
    case RewriteStep::ParUnitDrop: {
      ProcPtr dropped = forward ? l : r;
      Bindings b;
      b.formulas["A"] = emb(dropped->a);
      return project(bld.axiom("par-unit", b));
    }
    case RewriteStep::ResVacDrop: {
      ProcPtr res = forward ? l : r;
      Bindings b;
      b.names["a"] = res->name;
      b.formulas["A"] = emb(res->a);
      return project(bld.axiom("rev-vac", b));
    }
    case RewriteStep::ResSwap: {
      ProcPtr res = forward ? l : r;
      Bindings b;
      b.names["a"] = res->name;
      b.names["b"] = res->a->name;
      b.formulas["A"] = emb(res->a->a);
      int axi = bld.axiom("rev-swap", b);
      return forward ? bld.iff_fwd(axi) : bld.iff_bwd(axi);
    }
    case RewriteStep::AlphaRes: {
      ProcPtr from = forward ? l : r;
      ProcPtr to = forward ? r : l;
      Bindings b;
      b.names["a"] = from->name;
      b.names["b"] = to->name;
      b.formulas["A"] = emb(from->a);
      int axi = bld.axiom("alpha-rev", b);
      FormPtr al, ar;
      is_implication(bld.at(axi), al, ar);
      if (!keys_equal(ar, emb(to))) bug("alpha-rev instance mismatch");
      return axi;
    }
    case RewriteStep::AlphaIn: {
      ProcPtr from = forward ? l : r;
      ProcPtr to = forward ? r : l;
      Bindings b;
      b.names["a"] = from->name;
      b.vars["X"] = from->var;
      b.vars["Y"] = to->var;
      b.formulas["A"] = emb(from->a);
      int axi = bld.axiom("alpha-in", b);
      FormPtr al, ar;
      is_implication(bld.at(axi), al, ar);
      if (!keys_equal(ar, emb(to))) bug("alpha-in instance mismatch");
      return axi;
    }
    case RewriteStep::ScopeExtOut: {
      ProcPtr res = forward ? l : r;  // (nu a)(P|Q)
      Name a = res->name;
      ProcPtr P = res->a->a;
      ProcPtr Q = res->a->b;
      FormPtr FP = emb(P), FQ = emb(Q);
      Bindings sc;
      sc.names["a"] = a;
      sc.formulas["A"] = FP;
      sc.formulas["B"] = FQ;
      int scope = bld.axiom("rev-scope", sc);
      if (forward) {
        int intro = bridge_notfree(bld, P, a, false);
        int liftIn = lift_par_left(bld, intro, FQ);
        int wrapped = bld.rule(
            "rev-mono-imp", {liftIn},
            F::implies(F::reveal(a, F::par(FP, FQ)),
                       F::reveal(a, F::par(F::not_free(a, FP), FQ))));
        int open = bld.iff_fwd(scope);
        int elim = bridge_notfree(bld, P, a, true);
        int liftOut = lift_par_left(bld, elim, F::reveal(a, FQ));
        return bld.compose(bld.compose(wrapped, open), liftOut);
      }
      int intro = bridge_notfree(bld, P, a, false);
      int liftIn = lift_par_left(bld, intro, F::reveal(a, FQ));
      int close = bld.iff_bwd(scope);
      int elim = bridge_notfree(bld, P, a, true);
      int liftOut = lift_par_left(bld, elim, FQ);
      int wrapped = bld.rule(
          "rev-mono-imp", {liftOut},
          F::implies(F::reveal(a, F::par(F::not_free(a, FP), FQ)),
                     F::reveal(a, F::par(FP, FQ))));
      return bld.compose(bld.compose(liftIn, close), wrapped);
    }
  }
  bug("redex_implication: unreachable");
}

int rewrite_implication(Builder& bld, const RewriteStep& rs, bool forward) {
  int local = redex_implication(bld, rs, forward);
  const ProcPtr& want_l = forward ? rs.before : rs.after;
  const ProcPtr& want_r = forward ? rs.after : rs.before;
  int lifted = lift_through_path(bld, local, want_l, want_r, rs.path);
  FormPtr l, r;
  is_implication(bld.at(lifted), l, r);
  if (!keys_equal(l, emb(want_l)) || !keys_equal(r, emb(want_r)))
    bug("rewrite_implication: mismatch with trace terms");
  return lifted;
}

RewriteTrace trace_to_canonical(const ProcPtr& p, ProcPtr& canonOut) {
  RewriteTrace trace;
  ProcPtr fresh = freshen_binders_traced(p, trace, {});
  canonOut = canonical_traced(fresh, trace);
  return trace;
}

int congruence_implication(Builder& bld, const ProcPtr& p, const ProcPtr& q) {
  if (keys_equal(emb(p), emb(q))) return bld.taut(F::implies(emb(p), emb(q)));
  if (!congruent(p, q)) bug("congruence_implication: processes not congruent");
  ProcPtr cp, cq;
  RewriteTrace tp = trace_to_canonical(p, cp);
  RewriteTrace tq = trace_to_canonical(q, cq);
  if (!alpha_eq(cp, cq)) bug("congruence_implication: canonical forms differ");
  int cur = bld.taut(F::implies(emb(p), emb(p)));
  for (auto& rs : tp) cur = bld.compose(cur, rewrite_implication(bld, rs, true));
  for (auto it = tq.rbegin(); it != tq.rend(); ++it)
    cur = bld.compose(cur, rewrite_implication(bld, *it, false));
  FormPtr l, r;
  is_implication(bld.at(cur), l, r);
  if (!keys_equal(l, emb(p)) || !keys_equal(r, emb(q)))
    bug("congruence_implication: endpoints mismatch");
  return cur;
}

// ---------------------------------------------------------------------
// Transition derivations on the all-restrictions-on-top arrangement.

struct TopForm {
  std::vector<Name> binders;          // outermost first
  std::vector<ProcPtr> comps;         // prefix-headed components

  ProcPtr inner() const { return par_of(comps); }
  ProcPtr term() const {
    ProcPtr body = inner();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
      body = Process::res(*it, body);
    return body;
  }
};

void strip_top(const ProcPtr& t, TopForm& tf) {
  switch (t->kind) {
    case PKind::Res:
      tf.binders.push_back(t->name);
      strip_top(t->a, tf);
      return;
    case PKind::Par:
      strip_top(t->a, tf);
      strip_top(t->b, tf);
      return;
    case PKind::Nil:
      return;
    default:
      tf.comps.push_back(t);
      return;
  }
}

TopForm top_form(const ProcPtr& p, const std::vector<std::string>& avoid) {
  RewriteTrace ignored;
  ProcPtr fresh = freshen_binders_traced(canonical(p), ignored, avoid);
  TopForm tf;
  strip_top(fresh, tf);
  if (tf.comps.empty()) tf.comps.push_back(Process::nil());
  return tf;
}

ProcPtr rename_binder_everywhere(TopForm& tf, const Name& from, const Name& to) {
  for (auto& b : tf.binders)
    if (b == from) b = to;
  for (auto& c : tf.comps) c = rename_free_name(c, from, to);
  return tf.term();
}

const char* ax(bool weak, const char* strong, const char* weakId) {
  return weak ? weakId : strong;
}

// The tau modality continuation shift across the remaining components.
// imp: [active] -> Mod([cont]); returns ([active]|[rest]) -> Mod([cont]|[rest])
// for the tau / existential-input / reveal-free output modalities.
int shift_past_rest(Builder& bld, int imp, const FormPtr& modPayload, FKind modKind,
                    const Name& subject, const FormPtr& cont, const ProcPtr& rest,
                    bool weak) {
  FormPtr fr = emb(rest);
  int lifted = lift_par_left(bld, imp, fr);
  Bindings b;
  int shift = 0;
  switch (modKind) {
    case FKind::DiaTau:
      b.formulas["A"] = cont;
      b.formulas["B"] = fr;
      shift = bld.axiom(ax(weak, "tau-par", "weps-par"), b);
      break;
    case FKind::DiaIn:
      b.names["a"] = subject;
      b.formulas["C"] = modPayload;
      b.formulas["A"] = cont;
      b.formulas["B"] = fr;
      shift = bld.axiom(ax(weak, "in-par", "win-par"), b);
      break;
    case FKind::DiaOut:
      b.names["a"] = subject;
      b.nameLists["n"] = {};
      b.formulas["C"] = modPayload;
      b.formulas["A"] = cont;
      b.formulas["B"] = fr;
      shift = bld.axiom(ax(weak, "out-par-free", "wout-par-free"), b);
      break;
    default:
      bug("shift_past_rest: unsupported modality");
  }
  return bld.compose(lifted, shift);
}

// Lifts Mod through one restriction binder; imp: [S] -> Mod([T]) becomes
// (nu a)[S] -> Mod'((nu a)[T]) (or the opened form for extrusion).
struct ModState {
  FKind kind;            // DiaTau / DiaIn / DiaOut
  Name subject;
  FormPtr payload;       // full payload formula (with reveals for outputs)
  FormPtr cont;          // continuation formula
  ProcPtr contTerm;      // the process the continuation embeds
  std::vector<Name> opened;  // reveal chain already on the payload, outermost first
  ProcPtr payloadCore;   // process of the innermost payload
};

int lift_res(Builder& bld, int imp, ModState& ms, const Name& a, bool extrude, bool weak) {
  FormPtr l, r;
  is_implication(bld.at(imp), l, r);
  int wrapped = bld.rule("rev-mono-imp", {imp},
                         F::implies(F::reveal(a, l), F::reveal(a, r)));
  Bindings b;
  int commuted = 0;
  if (ms.kind == FKind::DiaTau) {
    if (extrude) bug("lift_res: cannot extrude over an internal step");
    b.names["a"] = a;
    b.formulas["A"] = ms.cont;
    int axi = bld.axiom(ax(weak, "res-tau", "weps-res"), b);
    commuted = bld.compose(wrapped, axi);
    ms.cont = F::reveal(a, ms.cont);
    ms.contTerm = Process::res(a, ms.contTerm);
    return commuted;
  }
  if (ms.kind == FKind::DiaIn) {
    if (extrude) bug("lift_res: inputs do not extrude");
    b.names["a"] = a;
    b.names["b"] = ms.subject;
    b.formulas["A"] = ms.cont;
    b.formulas["B"] = ms.payload;
    int axi = bld.axiom(ax(weak, "res-in", "wres-in"), b);
    // premises: a != subject, ((- a)B <-> B), ((~-)B <-> B)
    int guard = neq_taut(bld, a, ms.subject);
    int nfIff = bridge_notfree_iff(bld, ms.payloadCore, a);
    int nbIff = bridge_nobound_iff(bld, ms.payloadCore);
    FormPtr lw, rw;
    is_implication(bld.at(axi), lw, rw);
    int premStep;
    if (weak) {
      // (a != b and (((- a)B and (~-)B) <-> B))
      (void)guard;
      premStep = bld.taut(lw);
      (void)nfIff;
      (void)nbIff;
    } else {
      premStep = bld.taut(lw);
    }
    int inner = bld.mp(premStep, axi);
    commuted = bld.compose(wrapped, inner);
    ms.cont = F::reveal(a, ms.cont);
    ms.contTerm = Process::res(a, ms.contTerm);
    return commuted;
  }
  // outputs
  if (!extrude) {
    b.names["a"] = a;
    b.names["c"] = ms.subject;
    b.nameLists["n"] = ms.opened;
    b.formulas["A"] = ms.cont;
    b.formulas["B"] = emb(ms.payloadCore);
    int axi = bld.axiom(ax(weak, "res-out-free", "wres-out-free"), b);
    FormPtr lw, rw;
    is_implication(bld.at(axi), lw, rw);
    int nfIff = bridge_notfree_iff(bld, ms.payloadCore, a);
    (void)nfIff;
    for (auto& bi : ms.opened) neq_taut(bld, a, bi);
    neq_taut(bld, a, ms.subject);
    int premStep = bld.taut(lw);
    int inner = bld.mp(premStep, axi);
    commuted = bld.compose(wrapped, inner);
    ms.cont = F::reveal(a, ms.cont);
    ms.contTerm = Process::res(a, ms.contTerm);
    return commuted;
  }
  // extrusion via the open law
  b.names["a"] = ms.subject;
  b.names["b"] = a;
  b.nameLists["n"] = ms.opened;
  b.formulas["A"] = ms.cont;
  b.formulas["B"] = emb(ms.payloadCore);
  int axi = bld.axiom(ax(weak, "open-free", "wopen-free"), b);
  FormPtr lw, rw;
  is_implication(bld.at(axi), lw, rw);
  neq_taut(bld, ms.subject, a);
  for (auto& ci : ms.opened) neq_taut(bld, a, ci);
  occurs_premise(bld, ms.payloadCore, a);
  int premStep = bld.taut(lw);
  int inner = bld.mp(premStep, axi);
  commuted = bld.compose(wrapped, inner);
  ms.opened.insert(ms.opened.begin(), a);
  FormPtr newPayload = emb(ms.payloadCore);
  for (auto it = ms.opened.rbegin(); it != ms.opened.rend(); ++it)
    newPayload = F::reveal(*it, newPayload);
  ms.payload = newPayload;
  return commuted;
}

// Builds [tf.term()] -> Mod([target]) for the chosen action; returns the
// implication step and the tree target term.
struct TransImp {
  int step;
  ProcPtr target;
  FormPtr modal;  // the full modal formula on the right
};

// Output transition of component `idx` with the given extruded binder set.
TransImp output_implication(Builder& bld, TopForm tf, size_t idx,
                            const std::vector<Name>& extruded, bool weak) {
  ProcPtr ci = tf.comps[idx];
  if (ci->kind != PKind::Output) bug("output_implication: component not an output");
  // Arrange: active component first; extruded binders outermost in order.
  std::vector<ProcPtr> rest;
  for (size_t i = 0; i < tf.comps.size(); i++)
    if (i != idx) rest.push_back(tf.comps[i]);
  std::vector<Name> inner, outer = extruded;
  for (auto& b : tf.binders) {
    bool isExt = std::any_of(extruded.begin(), extruded.end(),
                             [&](const Name& e) { return e == b; });
    if (!isExt) inner.push_back(b);
  }

  ModState ms;
  ms.kind = FKind::DiaOut;
  ms.subject = ci->name;
  ms.payloadCore = ci->a;
  ms.payload = emb(ci->a);
  ms.cont = emb(ci->b);
  ms.contTerm = ci->b;

  Bindings ob;
  ob.names["a"] = ci->name;
  ob.formulas["B"] = emb(ci->a);
  ob.formulas["A"] = emb(ci->b);
  int imp = bld.axiom(ax(weak, "out-intro", "wout-intro"), ob);

  if (!rest.empty()) {
    ProcPtr restPar = par_of(rest);
    imp = shift_past_rest(bld, imp, ms.payload, FKind::DiaOut, ms.subject, ms.cont,
                          restPar, weak);
    ms.cont = F::par(ms.cont, emb(restPar));
    ms.contTerm = Process::par(ms.contTerm, restPar);
  }
  // inner (kept) binders first, innermost-first order
  for (auto it = inner.rbegin(); it != inner.rend(); ++it)
    imp = lift_res(bld, imp, ms, *it, false, weak);
  for (auto it = outer.rbegin(); it != outer.rend(); ++it)
    imp = lift_res(bld, imp, ms, *it, true, weak);

  FormPtr l, r;
  is_implication(bld.at(imp), l, r);
  TransImp out;
  out.step = imp;
  out.target = ms.contTerm;
  out.modal = r;
  return out;
}

// Input transition of component `idx` receiving payload e (no bound names).
TransImp input_implication(Builder& bld, TopForm tf, size_t idx, const ProcPtr& e,
                           bool weak) {
  ProcPtr ci = tf.comps[idx];
  if (ci->kind != PKind::Input) bug("input_implication: component not an input");
  std::vector<ProcPtr> rest;
  for (size_t i = 0; i < tf.comps.size(); i++)
    if (i != idx) rest.push_back(tf.comps[i]);

  ProcPtr residual = substitute(ci->a, ci->var, e);
  FormPtr fe = emb(e);
  FormPtr fres = formula_subst(emb(ci->a), ci->var, fe);
  if (!keys_equal(fres, emb(residual)))
    bug("input_implication: substitution does not commute with the embedding");

  int nbIff = bridge_nobound_iff(bld, e);
  Bindings ib;
  ib.names["a"] = ci->name;
  ib.vars["U"] = ci->var;
  ib.formulas["A"] = emb(ci->a);
  ib.formulas["B"] = fe;
  int axi = bld.axiom(ax(weak, "in-intro", "win-intro"), ib);
  FormPtr boxForm = weak ? F::weak_box_in(ci->name, fe, fres)
                         : F::box_in(ci->name, fe, fres);
  // from (in a(X).A and iff) -> box and iff alone: in a(X).A -> box
  int boxImp = bld.taut(F::implies(emb(ci), boxForm));
  (void)axi;
  (void)nbIff;
  Bindings bd;
  bd.names["a"] = ci->name;
  bd.formulas["B"] = fe;
  bd.formulas["A"] = fres;
  int toDia = bld.axiom(ax(weak, "box-to-dia", "wbox-to-dia"), bd);
  int imp = bld.compose(boxImp, toDia);

  ModState ms;
  ms.kind = FKind::DiaIn;
  ms.subject = ci->name;
  ms.payload = fe;
  ms.payloadCore = e;
  ms.cont = fres;
  ms.contTerm = residual;

  if (!rest.empty()) {
    ProcPtr restPar = par_of(rest);
    imp = shift_past_rest(bld, imp, ms.payload, FKind::DiaIn, ms.subject, ms.cont,
                          restPar, weak);
    ms.cont = F::par(ms.cont, emb(restPar));
    ms.contTerm = Process::par(ms.contTerm, restPar);
  }
  for (auto it = tf.binders.rbegin(); it != tf.binders.rend(); ++it)
    imp = lift_res(bld, imp, ms, *it, false, weak);

  FormPtr l, r;
  is_implication(bld.at(imp), l, r);
  return {imp, ms.contTerm, r};
}

// Internal communication between components outIdx and inIdx.
TransImp tau_implication(Builder& bld, const TopForm& tf, size_t outIdx, size_t inIdx,
                         bool weak) {
  ProcPtr co = tf.comps[outIdx];
  ProcPtr cj = tf.comps[inIdx];
  if (co->kind != PKind::Output || cj->kind != PKind::Input)
    bug("tau_implication: bad component pair");
  ProcPtr e = co->a;
  if (!restriction_free(e)) bug("tau_implication: payload not receivable");
  ProcPtr residual = substitute(cj->a, cj->var, e);
  FormPtr fe = emb(e);
  FormPtr fres = formula_subst(emb(cj->a), cj->var, fe);
  if (!keys_equal(fres, emb(residual)))
    bug("tau_implication: substitution does not commute with the embedding");

  // leaf implications
  Bindings ob;
  ob.names["a"] = co->name;
  ob.formulas["B"] = fe;
  ob.formulas["A"] = emb(co->b);
  int outImp = bld.axiom(ax(weak, "out-intro", "wout-intro"), ob);
  FormPtr outModal = weak ? F::weak_out(co->name, fe, emb(co->b))
                          : F::dia_out(co->name, fe, emb(co->b));

  int nbIff = bridge_nobound_iff(bld, e);
  Bindings ib;
  ib.names["a"] = cj->name;
  ib.vars["U"] = cj->var;
  ib.formulas["A"] = emb(cj->a);
  ib.formulas["B"] = fe;
  int inAx = bld.axiom(ax(weak, "in-intro", "win-intro"), ib);
  FormPtr boxForm = weak ? F::weak_box_in(cj->name, fe, fres)
                         : F::box_in(cj->name, fe, fres);
  int inImp = bld.taut(F::implies(emb(cj), boxForm));
  (void)inAx;
  (void)nbIff;

  // ([co]|[cj]) -> (Out|Box)
  int liftO = lift_par_left(bld, outImp, emb(cj));
  int liftI = lift_par_right(bld, inImp, outModal);
  int pair = bld.compose(liftO, liftI);

  // communication with no extrusion
  Bindings cb;
  cb.names["a"] = co->name;
  cb.nameLists["n"] = {};
  cb.formulas["C"] = fe;
  cb.formulas["A"] = emb(co->b);
  cb.formulas["B"] = fres;
  int comAx = bld.axiom(ax(weak, "com", "wcom"), cb);
  FormPtr cl, cr;
  is_implication(bld.at(comAx), cl, cr);
  int premStep = bld.taut(cl);  // ((~-)C <-> C), from the nobound bridge
  int comImp = bld.mp(premStep, comAx);
  int imp = bld.compose(pair, comImp);

  ModState ms;
  ms.kind = FKind::DiaTau;
  ms.subject = Name{};
  ms.payload = nullptr;
  ms.payloadCore = nullptr;
  ms.cont = F::par(emb(co->b), fres);
  ms.contTerm = Process::par(co->b, residual);

  std::vector<ProcPtr> rest;
  for (size_t i = 0; i < tf.comps.size(); i++)
    if (i != outIdx && i != inIdx) rest.push_back(tf.comps[i]);
  if (!rest.empty()) {
    ProcPtr restPar = par_of(rest);
    imp = shift_past_rest(bld, imp, nullptr, FKind::DiaTau, Name{}, ms.cont, restPar,
                          weak);
    ms.cont = F::par(ms.cont, emb(restPar));
    ms.contTerm = Process::par(ms.contTerm, restPar);
  }
  for (auto it = tf.binders.rbegin(); it != tf.binders.rend(); ++it)
    imp = lift_res(bld, imp, ms, *it, false, weak);

  FormPtr l, r;
  is_implication(bld.at(imp), l, r);
  return {imp, ms.contTerm, r};
}

// The source arrangement for a tau pair: (nu all)((co|cj)|rest).


struct TauOption {
  size_t outIdx, inIdx;
  ProcPtr target;  // tree target (not canonical)
};

std::vector<TauOption> tau_options(const TopForm& tf) {
  std::vector<TauOption> opts;
  for (size_t i = 0; i < tf.comps.size(); i++) {
    if (tf.comps[i]->kind != PKind::Output) continue;
    if (!restriction_free(tf.comps[i]->a)) continue;
    for (size_t j = 0; j < tf.comps.size(); j++) {
      if (i == j || tf.comps[j]->kind != PKind::Input) continue;
      if (!(tf.comps[i]->name == tf.comps[j]->name)) continue;
      ProcPtr resid = substitute(tf.comps[j]->a, tf.comps[j]->var, tf.comps[i]->a);
      ProcPtr inner = Process::par(tf.comps[i]->b, resid);
      std::vector<ProcPtr> rest;
      for (size_t k = 0; k < tf.comps.size(); k++)
        if (k != i && k != j) rest.push_back(tf.comps[k]);
      if (!rest.empty()) inner = Process::par(inner, par_of(rest));
      for (auto it = tf.binders.rbegin(); it != tf.binders.rend(); ++it)
        inner = Process::res(*it, inner);
      opts.push_back({i, j, inner});
    }
  }
  return opts;
}

// The tau_implication expects components ordered (co, cj, rest...) and
// binders tf.binders; rebuild a matching TopForm.
TopForm pair_first(const TopForm& tf, size_t outIdx, size_t inIdx) {
  TopForm out;
  out.binders = tf.binders;
  out.comps.push_back(tf.comps[outIdx]);
  out.comps.push_back(tf.comps[inIdx]);
  for (size_t i = 0; i < tf.comps.size(); i++)
    if (i != outIdx && i != inIdx) out.comps.push_back(tf.comps[i]);
  return out;
}

TopForm comp_first(const TopForm& tf, size_t idx, const std::vector<Name>& binderOrder) {
  TopForm out;
  out.binders = binderOrder;
  out.comps.push_back(tf.comps[idx]);
  for (size_t i = 0; i < tf.comps.size(); i++)
    if (i != idx) out.comps.push_back(tf.comps[i]);
  return out;
}

ProcPtr wrap_res(ProcPtr t, const std::vector<Name>& binders) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    t = Process::res(*it, t);
  return t;
}

// One derivable hop from `from`, as the implication
//   [arranged(from)] -> Mod([treeTarget])
// with treeTarget congruent to `target`. Nothing is emitted on failure.
struct Hop {
  int step;
  ProcPtr arranged;
  ProcPtr target;   // tree target (the modal continuation embeds it)
  FormPtr modal;    // the right-hand modal formula
};

std::optional<Hop> hop_implication(Builder& bld, const ProcPtr& from, const Action& a,
                                   const ProcPtr& target, bool weak,
                                   const std::vector<std::string>& avoid) {
  TopForm tf = top_form(from, avoid);
  switch (a.kind) {
    case Action::Tau: {
      for (auto& opt : tau_options(tf)) {
        if (!congruent(opt.target, target)) continue;
        TopForm arr = pair_first(tf, opt.outIdx, opt.inIdx);
        TransImp ti = tau_implication(bld, arr, 0, 1, weak);
        return Hop{ti.step, arr.term(), ti.target, ti.modal};
      }
      return std::nullopt;
    }
    case Action::Out: {
      for (size_t i = 0; i < tf.comps.size(); i++) {
        if (tf.comps[i]->kind != PKind::Output) continue;
        if (!(tf.comps[i]->name == a.subject)) continue;
        std::vector<Name> ext;
        for (auto& b : tf.binders)
          if (has_free_name(tf.comps[i]->a, b)) ext.push_back(b);
        if (ext.size() != a.extruded.size()) continue;
        // rename the extruding binders to the action's names
        TopForm tf2 = tf;
        for (size_t k = 0; k < ext.size(); k++)
          if (!(ext[k] == a.extruded[k]))
            rename_binder_everywhere(tf2, ext[k], a.extruded[k]);
        ProcPtr wrapped = wrap_res(tf2.comps[i]->a, a.extruded);
        ProcPtr wantWrapped = wrap_res(a.payload, a.extruded);
        if (!congruent(wrapped, wantWrapped)) continue;
        // binder order: extruded outermost, in action order
        std::vector<Name> order = a.extruded;
        std::vector<Name> kept;
        for (auto& b : tf2.binders) {
          bool isExt = std::any_of(a.extruded.begin(), a.extruded.end(),
                                   [&](const Name& e) { return e == b; });
          if (!isExt) kept.push_back(b);
        }
        order.insert(order.end(), kept.begin(), kept.end());
        // expected tree target: kept binders over (K | rest)
        std::vector<ProcPtr> rest;
        for (size_t k = 0; k < tf2.comps.size(); k++)
          if (k != i) rest.push_back(tf2.comps[k]);
        ProcPtr expect = tf2.comps[i]->b;
        if (!rest.empty()) expect = Process::par(expect, par_of(rest));
        expect = wrap_res(expect, kept);
        if (!congruent(expect, target)) continue;
        TopForm arr = comp_first(tf2, i, order);
        TransImp ti = output_implication(bld, arr, 0, a.extruded, weak);
        if (!congruent(ti.target, target)) bug("output target mismatch");
        return Hop{ti.step, arr.term(), ti.target, ti.modal};
      }
      return std::nullopt;
    }
    case Action::In: {
      ProcPtr e = canonical(a.payload);
      if (!restriction_free(e)) return std::nullopt;
      for (size_t i = 0; i < tf.comps.size(); i++) {
        if (tf.comps[i]->kind != PKind::Input) continue;
        if (!(tf.comps[i]->name == a.subject)) continue;
        ProcPtr resid = substitute(tf.comps[i]->a, tf.comps[i]->var, e);
        std::vector<ProcPtr> rest;
        for (size_t k = 0; k < tf.comps.size(); k++)
          if (k != i) rest.push_back(tf.comps[k]);
        ProcPtr expect = resid;
        if (!rest.empty()) expect = Process::par(expect, par_of(rest));
        expect = wrap_res(expect, tf.binders);
        if (!congruent(expect, target)) continue;
        TopForm arr = comp_first(tf, i, tf.binders);
        TransImp ti = input_implication(bld, arr, 0, e, weak);
        if (!congruent(ti.target, target)) bug("input target mismatch");
        return Hop{ti.step, arr.term(), ti.target, ti.modal};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// Shortest internal path between congruence classes, breadth-first.
std::optional<std::vector<ProcPtr>> tau_path(const ProcPtr& from, const ProcPtr& to,
                                             int fuel) {
  struct Node {
    ProcPtr term;
    int parent;
  };
  std::vector<Node> nodes{{canonical(from), -1}};
  std::map<std::string, int> seen{{canonical_key(from), 0}};
  auto unwind = [&](int idx) {
    std::vector<ProcPtr> path;
    for (int cur = idx; cur != -1; cur = nodes[cur].parent)
      path.push_back(nodes[cur].term);
    std::reverse(path.begin(), path.end());
    return path;
  };
  if (congruent(from, to)) return unwind(0);
  size_t frontierStart = 0;
  for (int round = 0; round < fuel; round++) {
    size_t frontierEnd = nodes.size();
    if (frontierStart == frontierEnd) break;
    for (size_t i = frontierStart; i < frontierEnd; i++) {
      for (auto& t : step_any(nodes[i].term, StepQuery::tau())) {
        auto key = alpha_key(t.target);
        if (!seen.emplace(key, static_cast<int>(nodes.size())).second) continue;
        nodes.push_back({t.target, static_cast<int>(i)});
        if (congruent(t.target, to))
          return unwind(static_cast<int>(nodes.size()) - 1);
      }
    }
    frontierStart = frontierEnd;
  }
  return std::nullopt;
}

}  // namespace

Proof prove_congruence(const ProcPtr& p, const ProcPtr& q) {
  if (!congruent(p, q))
    throw std::invalid_argument("prove_congruence: processes are not congruent");
  Builder bld;
  bld.pf.goal.dialect = Dialect::SL;
  bld.pf.goal.premises = {emb(p)};
  bld.pf.goal.conclusion = emb(q);
  int prem = bld.premise(1, emb(p));
  int imp = congruence_implication(bld, p, q);
  bld.mp(prem, imp);
  return std::move(bld.pf);
}

Proof prove_transition(const ProcPtr& p, const Action& act, const ProcPtr& q, bool weak) {
  if (!is_closed(p) || !is_closed(q))
    throw std::invalid_argument("prove_transition: processes must be closed");
  if (act.kind == Action::In && !bn(act.payload).empty())
    throw std::invalid_argument("prove_transition: input payload has bound names");

  Builder bld;
  bld.pf.goal.dialect = weak ? Dialect::WL : Dialect::SL;
  bld.pf.goal.premises = {emb(p)};

  std::vector<std::string> avoid;
  if (act.payload)
    for (auto& n : names_of(act.payload)) avoid.push_back(n);
  for (auto& e : act.extruded) avoid.push_back(e.id);
  for (auto& n : q->fn) avoid.push_back(n);

  if (!weak) {
    auto hop = hop_implication(bld, p, act, q, false, avoid);
    if (!hop)
      throw std::invalid_argument("prove_transition: transition is not derivable");
    int prem = bld.premise(1, emb(p));
    int glue = congruence_implication(bld, p, hop->arranged);
    int atArr = bld.mp(prem, glue);
    int modalStep = bld.mp(atArr, hop->step);
    int contGlue = congruence_implication(bld, hop->target, q);
    auto finalModal = std::make_shared<Formula>(*bld.at(modalStep));
    if (finalModal->b)
      finalModal->b = emb(q);
    else
      finalModal->a = emb(q);
    bld.rule("mono-dia", {modalStep, contGlue}, finalModal);
    bld.pf.goal.conclusion = finalModal;
    return std::move(bld.pf);
  }

  // Weak: tau path, optional labelled hop, tau path.
  const int fuel = 10;
  bool needLabel = act.kind != Action::Tau;
  std::vector<ProcPtr> pre;
  ProcPtr midSrc, midTgt;
  std::vector<ProcPtr> post;

  if (!needLabel) {
    auto path = tau_path(p, q, fuel);
    if (!path)
      throw std::invalid_argument("prove_transition: no internal path to the target");
    pre = *path;
  } else {
    // enumerate reachable states and try the labelled hop from each
    std::vector<ProcPtr> states{canonical(p)};
    std::map<std::string, int> parents{{canonical_key(p), -1}};
    std::vector<int> parentIdx{-1};
    bool done = false;
    for (size_t i = 0; i < states.size() && !done; i++) {
      StepQuery qy = act.kind == Action::Out
                         ? StepQuery::out()
                         : StepQuery::in(act.subject, canonical(act.payload));
      for (auto& t : step_any(states[i], qy)) {
        if (act.kind == Action::Out) {
          if (!(t.action.subject == act.subject)) continue;
          if (!congruent(wrap_res(t.action.payload, t.action.extruded),
                         wrap_res(act.payload, act.extruded)))
            continue;
        }
        auto tail = tau_path(t.target, q, fuel);
        if (!tail) continue;
        // reconstruct the leading path
        std::vector<ProcPtr> lead;
        for (int cur = static_cast<int>(i); cur != -1; cur = parentIdx[cur])
          lead.push_back(states[cur]);
        std::reverse(lead.begin(), lead.end());
        pre = lead;
        midSrc = states[i];
        midTgt = t.target;
        post = *tail;
        done = true;
        break;
      }
      if (done) break;
      if (states.size() < 4000) {
        for (auto& t : step_any(states[i], StepQuery::tau())) {
          auto key = alpha_key(t.target);
          if (parents.emplace(key, static_cast<int>(states.size())).second) {
            states.push_back(t.target);
            parentIdx.push_back(static_cast<int>(i));
          }
        }
      }
    }
    if (!done)
      throw std::invalid_argument("prove_transition: weak transition not derivable");
  }

  int prem = bld.premise(1, emb(p));
  int cur = prem;
  bool modal = false;
  FormPtr curModal;
  ProcPtr atTerm = p;

  // Applies one internal hop from atTerm to `to`.
  auto eps_hop = [&](const ProcPtr& to) {
    auto hop = hop_implication(bld, atTerm, Action::tau(), to, true, avoid);
    if (!hop) bug("internal hop not re-derivable");
    int glue = congruence_implication(bld, atTerm, hop->arranged);
    int imp = bld.compose(glue, hop->step);  // [atTerm] -> <<eps>>[tree]
    int contGlue = congruence_implication(bld, hop->target, to);
    if (!modal) {
      int atStep = cur;
      if (!keys_equal(emb(atTerm), bld.at(atStep)))
        bug("eps_hop: spine formula mismatch");
      int got = bld.mp(atStep, imp);
      int fixed = bld.rule("wmono-dia", {got, contGlue}, F::weak_eps(emb(to)));
      cur = fixed;
      curModal = F::weak_eps(emb(to));
      modal = true;
    } else {
      FormPtr li, ri;
      is_implication(bld.at(imp), li, ri);
      auto shell = std::make_shared<Formula>(*curModal);
      if (shell->b)
        shell->b = ri->a;
      else
        shell->a = ri->a;
      int chained = bld.rule("wchain-post", {cur, imp}, shell);
      auto fixedShell = std::make_shared<Formula>(*curModal);
      if (fixedShell->b)
        fixedShell->b = emb(to);
      else
        fixedShell->a = emb(to);
      cur = bld.rule("wmono-dia", {chained, contGlue}, fixedShell);
      curModal = fixedShell;
    }
    atTerm = to;
  };

  // glue the premise onto the first canonical state
  if (!pre.empty() && !keys_equal(emb(atTerm), emb(pre.front()))) {
    int glue0 = congruence_implication(bld, p, pre.front());
    cur = bld.mp(cur, glue0);
    atTerm = pre.front();
  }
  for (size_t i = 0; i + 1 < pre.size(); i++) eps_hop(pre[i + 1]);

  if (needLabel) {
    auto hop = hop_implication(bld, atTerm, act, midTgt, true, avoid);
    if (!hop) bug("labelled hop not re-derivable");
    int glue = congruence_implication(bld, atTerm, hop->arranged);
    int imp = bld.compose(glue, hop->step);
    if (!modal) {
      cur = bld.mp(cur, imp);
    } else {
      FormPtr li, ri;
      is_implication(bld.at(imp), li, ri);
      cur = bld.rule("wchain-pre", {cur, imp}, ri);
    }
    curModal = bld.at(cur);
    modal = true;
    atTerm = hop->target;
    // glue the tree target onto the canonical mid state, inside the modality
    if (!keys_equal(emb(atTerm), emb(midTgt))) {
      int contGlue = congruence_implication(bld, atTerm, midTgt);
      auto fixedShell = std::make_shared<Formula>(*curModal);
      if (fixedShell->b)
        fixedShell->b = emb(midTgt);
      else
        fixedShell->a = emb(midTgt);
      cur = bld.rule("wmono-dia", {cur, contGlue}, fixedShell);
      curModal = fixedShell;
      atTerm = midTgt;
    }
    for (size_t i = 0; i + 1 < post.size(); i++) eps_hop(post[i + 1]);
  } else if (!modal) {
    // zero internal steps
    Bindings rb;
    rb.formulas["A"] = bld.at(cur);
    int refl = bld.axiom("eps-refl", rb);
    cur = bld.mp(cur, refl);
    curModal = bld.at(cur);
    modal = true;
  }

  int contGlue = congruence_implication(bld, atTerm, q);
  auto finalModal = std::make_shared<Formula>(*curModal);
  if (finalModal->b)
    finalModal->b = emb(q);
  else
    finalModal->a = emb(q);
  bld.rule("wmono-dia", {cur, contGlue}, finalModal);
  bld.pf.goal.conclusion = finalModal;
  return std::move(bld.pf);
}

}  // namespace hopi::proofs
