#include "hopi/axioms.hpp"

#include <algorithm>
#include <stdexcept>

#include "hopi/canonical.hpp"
#include "hopi/translate.hpp"

namespace hopi::proofs {

using F = Formula;

FormPtr apply_modality(const ActionPattern& act, bool weak, const FormPtr& cont) {
  switch (act.kind) {
    case ActionPattern::Tau:
      return weak ? F::weak_eps(cont) : F::dia_tau(cont);
    case ActionPattern::Eps:
      return F::weak_eps(cont);
    case ActionPattern::DiaIn:
      return weak ? F::weak_in(act.subject, act.payload, cont)
                  : F::dia_in(act.subject, act.payload, cont);
    case ActionPattern::BoxIn:
      return weak ? F::weak_box_in(act.subject, act.payload, cont)
                  : F::box_in(act.subject, act.payload, cont);
    case ActionPattern::DiaOut:
      return weak ? F::weak_out(act.subject, act.payload, cont)
                  : F::dia_out(act.subject, act.payload, cont);
  }
  return cont;
}

bool is_implication(const FormPtr& f, FormPtr& lhs, FormPtr& rhs) {
  // not(A and not B)
  if (f->kind != FKind::Not || !f->a || f->a->kind != FKind::And) return false;
  const FormPtr& body = f->a;
  if (!body->b || body->b->kind != FKind::Not) return false;
  lhs = body->a;
  rhs = body->b->a;
  return true;
}

FormPtr make_implication(const FormPtr& lhs, const FormPtr& rhs) {
  return F::implies(lhs, rhs);
}

namespace {

struct Need {
  const Bindings& b;
  const std::string& schema;

  FormPtr f(const std::string& k) const {
    auto it = b.formulas.find(k);
    if (it == b.formulas.end())
      throw SideConditionError(schema + ": missing formula binding " + k);
    return it->second;
  }
  Name n(const std::string& k) const {
    auto it = b.names.find(k);
    if (it == b.names.end())
      throw SideConditionError(schema + ": missing name binding " + k);
    return it->second;
  }
  ProcVar v(const std::string& k) const {
    auto it = b.vars.find(k);
    if (it == b.vars.end())
      throw SideConditionError(schema + ": missing variable binding " + k);
    return it->second;
  }
  std::vector<Name> nl(const std::string& k) const {
    auto it = b.nameLists.find(k);
    if (it == b.nameLists.end()) return {};
    return it->second;
  }
  ActionPattern act() const {
    if (!b.action) throw SideConditionError(schema + ": missing action binding alpha");
    return *b.action;
  }
};

FormPtr revs(const std::vector<Name>& ns, FormPtr core) {
  for (auto it = ns.rbegin(); it != ns.rend(); ++it) core = F::reveal(*it, core);
  return core;
}

FormPtr notfrees(const std::vector<Name>& ns, FormPtr core) {
  for (auto it = ns.rbegin(); it != ns.rend(); ++it) core = F::not_free(*it, core);
  return core;
}

FormPtr conj(std::vector<FormPtr> parts) {
  if (parts.empty()) return nullptr;
  FormPtr out = parts.back();
  for (int i = static_cast<int>(parts.size()) - 2; i >= 0; i--)
    out = F::land(parts[i], out);
  return out;
}

// premise -> body, with an absent premise collapsing to the body.
FormPtr guarded(FormPtr premise, FormPtr body) {
  return premise ? F::implies(premise, body) : body;
}

void require(bool cond, const std::string& schema, const std::string& what) {
  if (!cond) throw SideConditionError(schema + ": side condition failed: " + what);
}

bool name_in(const std::vector<std::string>& v, const Name& n) {
  return std::find(v.begin(), v.end(), n.id) != v.end();
}
bool var_in(const std::vector<std::string>& v, const ProcVar& x) {
  return std::find(v.begin(), v.end(), x.id) != v.end();
}

std::vector<AxiomSchema> build_catalogue() {
  std::vector<AxiomSchema> cat;
  auto add = [&](AxiomSchema s) { cat.push_back(std::move(s)); };

  const std::map<std::string, MetaSort> FS = {{"A", MetaSort::Formula}};
  const std::map<std::string, MetaSort> FAB = {{"A", MetaSort::Formula},
                                               {"B", MetaSort::Formula}};
  const std::map<std::string, MetaSort> FABC = {{"A", MetaSort::Formula},
                                                {"B", MetaSort::Formula},
                                                {"C", MetaSort::Formula}};

  // --- strictness of falsity ------------------------------------------
  add({"bot-dia", kSL | kMuSL,
       {{"alpha", MetaSort::Action}}, true, true,
       "<alpha>F -> F",
       [](const Bindings& b) {
         Need g{b, "bot-dia"};
         return F::implies(apply_modality(g.act(), false, F::falsity()), F::falsity());
       }});
  add({"wbot-dia", kWL,
       {{"alpha", MetaSort::Action}}, true, true,
       "<<alpha>>F -> F",
       [](const Bindings& b) {
         Need g{b, "wbot-dia"};
         return F::implies(apply_modality(g.act(), true, F::falsity()), F::falsity());
       }});
  add({"bot-in-prefix", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"X", MetaSort::VarSort}}, true, true,
       "in a(X).F -> F",
       [](const Bindings& b) {
         Need g{b, "bot-in-prefix"};
         return F::implies(F::in_prefix(g.n("a"), g.v("X"), F::falsity()), F::falsity());
       }});
  add({"bot-out-cont", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}}, true, true,
       "out a<T>.F -> F",
       [](const Bindings& b) {
         Need g{b, "bot-out-cont"};
         return F::implies(F::out_prefix(g.n("a"), F::truth(), F::falsity()), F::falsity());
       }});
  add({"bot-out-payload", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}}, true, true,
       "out a<F>.T -> F",
       [](const Bindings& b) {
         Need g{b, "bot-out-payload"};
         return F::implies(F::out_prefix(g.n("a"), F::falsity(), F::truth()), F::falsity());
       }});
  add({"bot-in-adj", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"X", MetaSort::VarSort}}, true, true,
       "F \\ in a(X) -> F",
       [](const Bindings& b) {
         Need g{b, "bot-in-adj"};
         return F::implies(F::in_adjoint(F::falsity(), g.n("a"), g.v("X")), F::falsity());
       }});
  add({"bot-out-adj", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}}, true, true,
       "F \\ out a -> F",
       [](const Bindings& b) {
         Need g{b, "bot-out-adj"};
         return F::implies(F::out_adjoint(F::falsity(), g.n("a")), F::falsity());
       }});
  add({"bot-par", kSL | kWL | kMuSL, FS, true, true, "A | F -> F",
       [](const Bindings& b) {
         Need g{b, "bot-par"};
         return F::implies(F::par(g.f("A"), F::falsity()), F::falsity());
       }});
  add({"bot-guar-right", kSL | kWL | kMuSL, FS, true, true, "A |> F -> F",
       [](const Bindings& b) {
         Need g{b, "bot-guar-right"};
         return F::implies(F::guarantee(g.f("A"), F::falsity()), F::falsity());
       }});
  add({"bot-guar-left", kSL | kWL | kMuSL, FS, true, true, "F |> A -> F",
       [](const Bindings& b) {
         Need g{b, "bot-guar-left"};
         return F::implies(F::guarantee(F::falsity(), g.f("A")), F::falsity());
       }});
  add({"bot-rev", kSL | kWL | kMuSL, {{"a", MetaSort::NameSort}}, true, true,
       "a @ F -> F",
       [](const Bindings& b) {
         Need g{b, "bot-rev"};
         return F::implies(F::reveal(g.n("a"), F::falsity()), F::falsity());
       }});
  add({"bot-hide", kSL | kWL | kMuSL, {{"a", MetaSort::NameSort}}, true, true,
       "F / a -> F",
       [](const Bindings& b) {
         Need g{b, "bot-hide"};
         return F::implies(F::hide(F::falsity(), g.n("a")), F::falsity());
       }});
  add({"bot-notfree", kSL | kWL | kMuSL, {{"a", MetaSort::NameSort}}, true, true,
       "(- a)F -> F",
       [](const Bindings& b) {
         Need g{b, "bot-notfree"};
         return F::implies(F::not_free(g.n("a"), F::falsity()), F::falsity());
       }});
  add({"bot-freshname", kSL | kWL | kMuSL, {{"x", MetaSort::NameSort}}, true, true,
       "(N x)F -> F",
       [](const Bindings& b) {
         Need g{b, "bot-freshname"};
         return F::implies(F::fresh_name(g.n("x"), F::falsity()), F::falsity());
       }});
  add({"bot-nobound", kSL | kWL | kMuSL, {}, true, true, "(~-)F -> F",
       [](const Bindings&) {
         return F::implies(F::no_bound(F::falsity()), F::falsity());
       }});
  add({"bot-freshvar", kSL | kWL | kMuSL, {{"X", MetaSort::VarSort}}, true, true,
       "(NV X)F -> F",
       [](const Bindings& b) {
         Need g{b, "bot-freshvar"};
         return F::implies(F::fresh_var(g.v("X"), F::falsity()), F::falsity());
       }});

  // --- structural laws --------------------------------------------------
  add({"par-comm", kSL | kWL | kMuSL, FAB, true, true, "A | B <-> B | A",
       [](const Bindings& b) {
         Need g{b, "par-comm"};
         return F::iff(F::par(g.f("A"), g.f("B")), F::par(g.f("B"), g.f("A")));
       }});
  add({"par-assoc", kSL | kWL | kMuSL, FABC, true, true, "(A|B)|C <-> A|(B|C)",
       [](const Bindings& b) {
         Need g{b, "par-assoc"};
         return F::iff(F::par(F::par(g.f("A"), g.f("B")), g.f("C")),
                       F::par(g.f("A"), F::par(g.f("B"), g.f("C"))));
       }});
  add({"par-unit", kSL | kWL | kMuSL, FS, true, true, "A | 0 <-> A",
       [](const Bindings& b) {
         Need g{b, "par-unit"};
         return F::iff(F::par(g.f("A"), F::zero()), g.f("A"));
       }});
  add({"rev-zero", kSL | kWL | kMuSL, {{"a", MetaSort::NameSort}}, true, true,
       "a @ 0 <-> 0",
       [](const Bindings& b) {
         Need g{b, "rev-zero"};
         return F::iff(F::reveal(g.n("a"), F::zero()), F::zero());
       }});
  add({"rev-swap", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"b", MetaSort::NameSort}, {"A", MetaSort::Formula}},
       true, true, "a @ b @ A <-> b @ a @ A",
       [](const Bindings& b) {
         Need g{b, "rev-swap"};
         return F::iff(F::reveal(g.n("a"), F::reveal(g.n("b"), g.f("A"))),
                       F::reveal(g.n("b"), F::reveal(g.n("a"), g.f("A"))));
       }});
  add({"rev-scope", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula}},
       true, true, "a @ ((- a)A | B) <-> (- a)A | a @ B",
       [](const Bindings& b) {
         Need g{b, "rev-scope"};
         Name a = g.n("a");
         return F::iff(F::reveal(a, F::par(F::not_free(a, g.f("A")), g.f("B"))),
                       F::par(F::not_free(a, g.f("A")), F::reveal(a, g.f("B"))));
       }});
  add({"rev-fresh", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"b", MetaSort::NameSort}, {"A", MetaSort::Formula}},
       true, true, "a @ A -> (N b) b @ A{b/a}",
       [](const Bindings& b) {
         Need g{b, "rev-fresh"};
         Name a = g.n("a"), nb = g.n("b");
         require(!(nb == a) && !name_in(fn(g.f("A")), nb), "rev-fresh",
                 "b must be fresh for a and A");
         return F::implies(
             F::reveal(a, g.f("A")),
             F::fresh_name(nb, F::reveal(nb, formula_rename_name(g.f("A"), a, nb))));
       }});
  add({"in-fresh", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"X", MetaSort::VarSort}, {"Y", MetaSort::VarSort},
        {"A", MetaSort::Formula}},
       true, true, "in a(X).A -> (NV Y) in a(Y).A{Y/X}",
       [](const Bindings& b) {
         Need g{b, "in-fresh"};
         ProcVar x = g.v("X"), y = g.v("Y");
         require(!(y == x) && !var_in(fpv(g.f("A")), y), "in-fresh",
                 "Y must be fresh for X and A");
         return F::implies(
             F::in_prefix(g.n("a"), x, g.f("A")),
             F::fresh_var(y, F::in_prefix(g.n("a"), y, formula_rename_var(g.f("A"), x, y))));
       }});
  add({"notfree-zero", kSL | kWL | kMuSL, {{"a", MetaSort::NameSort}}, true, true,
       "(- a)0 <-> 0",
       [](const Bindings& b) {
         Need g{b, "notfree-zero"};
         return F::iff(F::not_free(g.n("a"), F::zero()), F::zero());
       }});
  add({"notfree-var", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"X", MetaSort::VarSort}}, true, true,
       "(- a)X <-> X",
       [](const Bindings& b) {
         Need g{b, "notfree-var"};
         return F::iff(F::not_free(g.n("a"), F::propvar(g.v("X"))), F::propvar(g.v("X")));
       }});
  add({"notfree-in-same", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"X", MetaSort::VarSort}, {"A", MetaSort::Formula}},
       true, true, "(- a)(in a(X).A) <-> F",
       [](const Bindings& b) {
         Need g{b, "notfree-in-same"};
         Name a = g.n("a");
         return F::iff(F::not_free(a, F::in_prefix(a, g.v("X"), g.f("A"))), F::falsity());
       }});
  add({"notfree-out-same", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula}},
       true, true, "(- a)(out a<B>.A) <-> F",
       [](const Bindings& b) {
         Need g{b, "notfree-out-same"};
         Name a = g.n("a");
         return F::iff(F::not_free(a, F::out_prefix(a, g.f("B"), g.f("A"))), F::falsity());
       }});
  add({"notfree-in-other", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"b", MetaSort::NameSort}, {"X", MetaSort::VarSort},
        {"A", MetaSort::Formula}},
       true, true, "a != b -> ((- a)(in b(X).A) <-> in b(X).(- a)A)",
       [](const Bindings& b) {
         Need g{b, "notfree-in-other"};
         Name a = g.n("a"), nb = g.n("b");
         return F::implies(
             F::neq(a, nb),
             F::iff(F::not_free(a, F::in_prefix(nb, g.v("X"), g.f("A"))),
                    F::in_prefix(nb, g.v("X"), F::not_free(a, g.f("A")))));
       }});
  add({"notfree-out-other", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"b", MetaSort::NameSort}, {"A", MetaSort::Formula},
        {"B", MetaSort::Formula}},
       true, true, "a != b -> ((- a)(out b<B>.A) <-> out b<(- a)B>.(- a)A)",
       [](const Bindings& b) {
         Need g{b, "notfree-out-other"};
         Name a = g.n("a"), nb = g.n("b");
         return F::implies(
             F::neq(a, nb),
             F::iff(F::not_free(a, F::out_prefix(nb, g.f("B"), g.f("A"))),
                    F::out_prefix(nb, F::not_free(a, g.f("B")),
                                  F::not_free(a, g.f("A")))));
       }});
  add({"notfree-par", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula}},
       true, true, "(- a)A | (- a)B <-> (- a)(A|B)",
       [](const Bindings& b) {
         Need g{b, "notfree-par"};
         Name a = g.n("a");
         return F::iff(F::par(F::not_free(a, g.f("A")), F::not_free(a, g.f("B"))),
                       F::not_free(a, F::par(g.f("A"), g.f("B"))));
       }});
  add({"notfree-swap", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"b", MetaSort::NameSort}, {"A", MetaSort::Formula}},
       true, true, "a != b -> ((- a)(- b)A <-> (- b)(- a)A)",
       [](const Bindings& b) {
         Need g{b, "notfree-swap"};
         Name a = g.n("a"), nb = g.n("b");
         return F::implies(F::neq(a, nb),
                           F::iff(F::not_free(a, F::not_free(nb, g.f("A"))),
                                  F::not_free(nb, F::not_free(a, g.f("A")))));
       }});
  // Transcribed as printed; its unconstrained right-hand side refutes on
  // simple instances, so it is excluded from validity sampling.
  add({"notfree-rev-intro", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}}, true, false,
       "(- a)T -> (- a)(a @ A)",
       [](const Bindings& b) {
         Need g{b, "notfree-rev-intro"};
         Name a = g.n("a");
         return F::implies(F::not_free(a, F::truth()),
                           F::not_free(a, F::reveal(a, g.f("A"))));
       }});

  // --- bound-name-freeness laws ---------------------------------------
  add({"nobound-zero", kSL | kWL | kMuSL, {}, true, true, "(~-)0 <-> 0",
       [](const Bindings&) { return F::iff(F::no_bound(F::zero()), F::zero()); }});
  add({"nobound-var", kSL | kWL | kMuSL, {{"X", MetaSort::VarSort}}, true, true,
       "(~-)X <-> X",
       [](const Bindings& b) {
         Need g{b, "nobound-var"};
         return F::iff(F::no_bound(F::propvar(g.v("X"))), F::propvar(g.v("X")));
       }});
  add({"nobound-in", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"X", MetaSort::VarSort}, {"A", MetaSort::Formula}},
       true, true, "(~-)(in a(X).A) <-> in a(X).(~-)A",
       [](const Bindings& b) {
         Need g{b, "nobound-in"};
         return F::iff(F::no_bound(F::in_prefix(g.n("a"), g.v("X"), g.f("A"))),
                       F::in_prefix(g.n("a"), g.v("X"), F::no_bound(g.f("A"))));
       }});
  add({"nobound-out", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula}},
       true, true, "(~-)(out a<B>.A) <-> out a<(~-)B>.(~-)A",
       [](const Bindings& b) {
         Need g{b, "nobound-out"};
         return F::iff(F::no_bound(F::out_prefix(g.n("a"), g.f("B"), g.f("A"))),
                       F::out_prefix(g.n("a"), F::no_bound(g.f("B")),
                                     F::no_bound(g.f("A"))));
       }});
  add({"nobound-par", kSL | kWL | kMuSL, FAB, true, true,
       "(~-)A | (~-)B <-> (~-)(A|B)",
       [](const Bindings& b) {
         Need g{b, "nobound-par"};
         return F::iff(F::par(F::no_bound(g.f("A")), F::no_bound(g.f("B"))),
                       F::no_bound(F::par(g.f("A"), g.f("B"))));
       }});
  add({"nobound-rev", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}}, true, true,
       "(~-)(a @ A) -> F",
       [](const Bindings& b) {
         Need g{b, "nobound-rev"};
         return F::implies(F::no_bound(F::reveal(g.n("a"), g.f("A"))), F::falsity());
       }});

  // --- fresh-name quantifier laws ---------------------------------------
  add({"freshname-zero", kSL | kWL | kMuSL, {{"x", MetaSort::NameSort}}, true, true,
       "(N x)0 <-> 0",
       [](const Bindings& b) {
         Need g{b, "freshname-zero"};
         return F::iff(F::fresh_name(g.n("x"), F::zero()), F::zero());
       }});
  add({"freshname-var", kSL | kWL | kMuSL,
       {{"x", MetaSort::NameSort}, {"X", MetaSort::VarSort}}, true, true,
       "(N x)X <-> X",
       [](const Bindings& b) {
         Need g{b, "freshname-var"};
         return F::iff(F::fresh_name(g.n("x"), F::propvar(g.v("X"))),
                       F::propvar(g.v("X")));
       }});
  add({"freshname-in", kSL | kWL | kMuSL,
       {{"x", MetaSort::NameSort}, {"a", MetaSort::NameSort}, {"X", MetaSort::VarSort},
        {"A", MetaSort::Formula}},
       true, true, "(N x)(in a(X).A) <-> in a(X).(N x)(x != a and A)",
       [](const Bindings& b) {
         Need g{b, "freshname-in"};
         Name x = g.n("x"), a = g.n("a");
         require(!(x == a), "freshname-in", "x and a must be distinct");
         return F::iff(
             F::fresh_name(x, F::in_prefix(a, g.v("X"), g.f("A"))),
             F::in_prefix(a, g.v("X"),
                          F::fresh_name(x, F::land(F::neq(x, a), g.f("A")))));
       }});
  add({"freshname-out", kSL | kWL | kMuSL,
       {{"x", MetaSort::NameSort}, {"a", MetaSort::NameSort}, {"A", MetaSort::Formula},
        {"B", MetaSort::Formula}},
       true, true,
       "(N x)(out a<B>.A) -> out a<(N x)(x != a and B)>.(N x)(x != a and A)",
       [](const Bindings& b) {
         Need g{b, "freshname-out"};
         Name x = g.n("x"), a = g.n("a");
         require(!(x == a), "freshname-out", "x and a must be distinct");
         return F::implies(
             F::fresh_name(x, F::out_prefix(a, g.f("B"), g.f("A"))),
             F::out_prefix(a, F::fresh_name(x, F::land(F::neq(x, a), g.f("B"))),
                           F::fresh_name(x, F::land(F::neq(x, a), g.f("A")))));
       }});
  add({"freshname-par", kSL | kWL | kMuSL,
       {{"x", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula}},
       true, true, "(N x)(A|B) -> (N x)A | (N x)B",
       [](const Bindings& b) {
         Need g{b, "freshname-par"};
         Name x = g.n("x");
         return F::implies(F::fresh_name(x, F::par(g.f("A"), g.f("B"))),
                           F::par(F::fresh_name(x, g.f("A")), F::fresh_name(x, g.f("B"))));
       }});
  add({"freshname-rev", kSL | kWL | kMuSL,
       {{"x", MetaSort::NameSort}, {"a", MetaSort::NameSort}, {"A", MetaSort::Formula}},
       true, true, "(N x)(x != a) and a @ A -> a @ (N x)A",
       [](const Bindings& b) {
         Need g{b, "freshname-rev"};
         Name x = g.n("x"), a = g.n("a");
         require(!(x == a), "freshname-rev", "x and a must be distinct");
         return F::implies(F::land(F::fresh_name(x, F::neq(x, a)),
                                   F::reveal(a, g.f("A"))),
                           F::reveal(a, F::fresh_name(x, g.f("A"))));
       }});

  // --- fresh-variable quantifier laws -----------------------------------
  add({"freshvar-zero", kSL | kWL | kMuSL, {{"X", MetaSort::VarSort}}, true, true,
       "(NV X)0 <-> 0",
       [](const Bindings& b) {
         Need g{b, "freshvar-zero"};
         return F::iff(F::fresh_var(g.v("X"), F::zero()), F::zero());
       }});
  // Transcribed as printed; the free variable on the right has no stated
  // side condition, so it is excluded from validity sampling.
  add({"freshvar-var", kSL | kWL | kMuSL,
       {{"X", MetaSort::VarSort}, {"Y", MetaSort::VarSort}}, true, false,
       "(NV X)X -> Y",
       [](const Bindings& b) {
         Need g{b, "freshvar-var"};
         return F::implies(F::fresh_var(g.v("X"), F::propvar(g.v("X"))),
                           F::propvar(g.v("Y")));
       }});
  add({"freshvar-in", kSL | kWL | kMuSL,
       {{"X", MetaSort::VarSort}, {"Y", MetaSort::VarSort}, {"a", MetaSort::NameSort},
        {"A", MetaSort::Formula}},
       true, true, "(NV X)(in a(Y).A) <-> in a(Y).(NV X)A",
       [](const Bindings& b) {
         Need g{b, "freshvar-in"};
         ProcVar x = g.v("X"), y = g.v("Y");
         require(!(x == y), "freshvar-in", "X and Y must be distinct");
         return F::iff(F::fresh_var(x, F::in_prefix(g.n("a"), y, g.f("A"))),
                       F::in_prefix(g.n("a"), y, F::fresh_var(x, g.f("A"))));
       }});
  add({"freshvar-out", kSL | kWL | kMuSL,
       {{"X", MetaSort::VarSort}, {"a", MetaSort::NameSort}, {"A", MetaSort::Formula},
        {"B", MetaSort::Formula}},
       true, true, "(NV X)(out a<B>.A) -> out a<(NV X)B>.(NV X)A",
       [](const Bindings& b) {
         Need g{b, "freshvar-out"};
         ProcVar x = g.v("X");
         return F::implies(F::fresh_var(x, F::out_prefix(g.n("a"), g.f("B"), g.f("A"))),
                           F::out_prefix(g.n("a"), F::fresh_var(x, g.f("B")),
                                         F::fresh_var(x, g.f("A"))));
       }});
  add({"freshvar-par", kSL | kWL | kMuSL,
       {{"X", MetaSort::VarSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula}},
       true, true, "(NV X)(A|B) -> (NV X)A | (NV X)B",
       [](const Bindings& b) {
         Need g{b, "freshvar-par"};
         ProcVar x = g.v("X");
         return F::implies(F::fresh_var(x, F::par(g.f("A"), g.f("B"))),
                           F::par(F::fresh_var(x, g.f("A")), F::fresh_var(x, g.f("B"))));
       }});
  add({"freshvar-rev", kSL | kWL | kMuSL,
       {{"X", MetaSort::VarSort}, {"a", MetaSort::NameSort}, {"A", MetaSort::Formula}},
       true, true, "(NV X)(a @ A) <-> a @ (NV X)A",
       [](const Bindings& b) {
         Need g{b, "freshvar-rev"};
         ProcVar x = g.v("X");
         return F::iff(F::fresh_var(x, F::reveal(g.n("a"), g.f("A"))),
                       F::reveal(g.n("a"), F::fresh_var(x, g.f("A"))));
       }});

  // --- adjunctions -------------------------------------------------------
  add({"in-adj-elim", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"X", MetaSort::VarSort}, {"A", MetaSort::Formula}},
       true, true, "in a(X).(A \\ in a(X)) -> A",
       [](const Bindings& b) {
         Need g{b, "in-adj-elim"};
         return F::implies(
             F::in_prefix(g.n("a"), g.v("X"),
                          F::in_adjoint(g.f("A"), g.n("a"), g.v("X"))),
             g.f("A"));
       }});
  add({"in-adj-intro", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"X", MetaSort::VarSort}, {"A", MetaSort::Formula}},
       true, true, "A -> (in a(X).A) \\ in a(X)",
       [](const Bindings& b) {
         Need g{b, "in-adj-intro"};
         return F::implies(g.f("A"),
                           F::in_adjoint(F::in_prefix(g.n("a"), g.v("X"), g.f("A")),
                                         g.n("a"), g.v("X")));
       }});
  add({"out-adj-elim", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}}, true, true,
       "out a<A \\ out a>.0 -> A",
       [](const Bindings& b) {
         Need g{b, "out-adj-elim"};
         return F::implies(F::out_prefix(g.n("a"), F::out_adjoint(g.f("A"), g.n("a")),
                                         F::zero()),
                           g.f("A"));
       }});
  add({"out-adj-intro", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}}, true, true,
       "A -> (out a<A>.0) \\ out a",
       [](const Bindings& b) {
         Need g{b, "out-adj-intro"};
         return F::implies(g.f("A"),
                           F::out_adjoint(F::out_prefix(g.n("a"), g.f("A"), F::zero()),
                                          g.n("a")));
       }});
  add({"guarantee-elim", kSL | kWL | kMuSL, FAB, true, true, "(A | A |> B) -> B",
       [](const Bindings& b) {
         Need g{b, "guarantee-elim"};
         return F::implies(F::par(g.f("A"), F::guarantee(g.f("A"), g.f("B"))), g.f("B"));
       }});
  add({"guarantee-intro", kSL | kWL | kMuSL, FAB, true, true, "A -> (B |> A|B)",
       [](const Bindings& b) {
         Need g{b, "guarantee-intro"};
         return F::implies(g.f("A"),
                           F::guarantee(g.f("B"), F::par(g.f("A"), g.f("B"))));
       }});
  add({"hide-elim", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}}, true, true,
       "a @ (A / a) -> A",
       [](const Bindings& b) {
         Need g{b, "hide-elim"};
         return F::implies(F::reveal(g.n("a"), F::hide(g.f("A"), g.n("a"))), g.f("A"));
       }});
  add({"hide-intro", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}}, true, true,
       "A -> (a @ A) / a",
       [](const Bindings& b) {
         Need g{b, "hide-intro"};
         return F::implies(g.f("A"), F::hide(F::reveal(g.n("a"), g.f("A")), g.n("a")));
       }});

  // --- transition axioms -------------------------------------------------
  auto out_intro = [](bool weak) {
    return [weak](const Bindings& b) {
      Need g{b, weak ? "wout-intro" : "out-intro"};
      FormPtr body = F::out_prefix(g.n("a"), g.f("B"), g.f("A"));
      FormPtr modal = weak ? F::weak_out(g.n("a"), g.f("B"), g.f("A"))
                           : F::dia_out(g.n("a"), g.f("B"), g.f("A"));
      return F::implies(body, modal);
    };
  };
  add({"out-intro", kSL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula}},
       true, true, "out a<B>.A -> <'a<B>>A", out_intro(false)});
  add({"wout-intro", kWL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula}},
       true, true, "out a<B>.A -> <<'a<B>>>A", out_intro(true)});

  auto in_intro = [](bool weak) {
    return [weak](const Bindings& b) {
      Need g{b, weak ? "win-intro" : "in-intro"};
      Name a = g.n("a");
      ProcVar u = g.v("U");
      FormPtr A = g.f("A"), B = g.f("B");
      FormPtr premise = F::land(F::in_prefix(a, u, A), F::iff(F::no_bound(B), B));
      FormPtr inst = formula_subst(A, u, B);
      FormPtr modal = weak ? F::weak_box_in(a, B, inst) : F::box_in(a, B, inst);
      return F::implies(premise, modal);
    };
  };
  add({"in-intro", kSL | kMuSL,
       {{"a", MetaSort::NameSort}, {"U", MetaSort::VarSort}, {"A", MetaSort::Formula},
        {"B", MetaSort::Formula}},
       true, true, "(in a(U).A and ((~-)B <-> B)) -> <a[B]>A{B/U}", in_intro(false)});
  add({"win-intro", kWL,
       {{"a", MetaSort::NameSort}, {"U", MetaSort::VarSort}, {"A", MetaSort::Formula},
        {"B", MetaSort::Formula}},
       true, true, "(in a(U).A and ((~-)B <-> B)) -> <<a[B]>>A{B/U}", in_intro(true)});

  add({"tau-par", kSL | kMuSL, FAB, true, true, "(<tau>A)|B -> <tau>(A|B)",
       [](const Bindings& b) {
         Need g{b, "tau-par"};
         return F::implies(F::par(F::dia_tau(g.f("A")), g.f("B")),
                           F::dia_tau(F::par(g.f("A"), g.f("B"))));
       }});
  add({"weps-par", kWL, FAB, true, true, "(<<eps>>A)|B -> <<eps>>(A|B)",
       [](const Bindings& b) {
         Need g{b, "weps-par"};
         return F::implies(F::par(F::weak_eps(g.f("A")), g.f("B")),
                           F::weak_eps(F::par(g.f("A"), g.f("B"))));
       }});
  auto in_par = [](bool weak) {
    return [weak](const Bindings& b) {
      Need g{b, weak ? "win-par" : "in-par"};
      FormPtr modal = weak ? F::weak_in(g.n("a"), g.f("C"), g.f("A"))
                           : F::dia_in(g.n("a"), g.f("C"), g.f("A"));
      FormPtr shifted = weak ? F::weak_in(g.n("a"), g.f("C"), F::par(g.f("A"), g.f("B")))
                             : F::dia_in(g.n("a"), g.f("C"), F::par(g.f("A"), g.f("B")));
      return F::implies(F::par(modal, g.f("B")), shifted);
    };
  };
  add({"in-par", kSL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula},
        {"C", MetaSort::Formula}},
       true, true, "(<a<C>>A)|B -> <a<C>>(A|B)", in_par(false)});
  add({"win-par", kWL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula},
        {"C", MetaSort::Formula}},
       true, true, "(<<a<C>>>A)|B -> <<a<C>>>(A|B)", in_par(true)});

  // out-par / com and the restriction commutation laws; `n` is the list of
  // revealed names carried by the output payload.
  auto out_par = [](bool weak, bool dropNoBound, const char* id) {
    return [weak, dropNoBound, id](const Bindings& b) {
      Need g{b, id};
      auto bl = g.nl("n");
      Name a = g.n("a");
      FormPtr A = g.f("A"), B = g.f("B"), C = g.f("C");
      FormPtr payload = revs(bl, C);
      std::vector<FormPtr> prem;
      if (!bl.empty()) prem.push_back(F::iff(notfrees(bl, B), B));
      if (!dropNoBound) prem.push_back(F::iff(F::no_bound(C), C));
      FormPtr modal = weak ? F::weak_out(a, payload, A) : F::dia_out(a, payload, A);
      FormPtr shifted = weak ? F::weak_out(a, payload, F::par(A, B))
                             : F::dia_out(a, payload, F::par(A, B));
      return guarded(conj(prem), F::implies(F::par(modal, B), shifted));
    };
  };
  const std::map<std::string, MetaSort> outParSorts = {
      {"a", MetaSort::NameSort}, {"n", MetaSort::NameList}, {"A", MetaSort::Formula},
      {"B", MetaSort::Formula}, {"C", MetaSort::Formula}};
  add({"out-par", kSL | kMuSL, outParSorts, true, true,
       "(((- n~)B <-> B) and ((~-)C <-> C)) -> ((<'a<n~ @ C>>A)|B -> <'a<n~ @ C>>(A|B))",
       out_par(false, false, "out-par")});
  add({"wout-par", kWL, outParSorts, true, true,
       "weak variant of out-par", out_par(true, false, "wout-par")});
  add({"out-par-free", kSL | kMuSL, outParSorts, false, true,
       "out-par without the (~-) premise (payload bound names are renameable)",
       out_par(false, true, "out-par-free")});
  add({"wout-par-free", kWL, outParSorts, false, true,
       "weak variant of out-par-free", out_par(true, true, "wout-par-free")});

  auto com = [](bool weak, const char* id) {
    return [weak, id](const Bindings& b) {
      Need g{b, id};
      auto bl = g.nl("n");
      Name a = g.n("a");
      FormPtr A = g.f("A"), B = g.f("B"), C = g.f("C");
      std::vector<FormPtr> prem;
      if (!bl.empty()) prem.push_back(F::iff(notfrees(bl, B), B));
      prem.push_back(F::iff(F::no_bound(C), C));
      FormPtr outModal = weak ? F::weak_out(a, revs(bl, C), A)
                              : F::dia_out(a, revs(bl, C), A);
      FormPtr inModal = weak ? F::weak_box_in(a, C, B) : F::box_in(a, C, B);
      FormPtr tauModal = weak ? F::weak_eps(revs(bl, F::par(A, B)))
                              : F::dia_tau(revs(bl, F::par(A, B)));
      return guarded(conj(prem), F::implies(F::par(outModal, inModal), tauModal));
    };
  };
  add({"com", kSL | kMuSL, outParSorts, true, true,
       "(((- n~)B <-> B) and ((~-)C <-> C)) -> ((<'a<n~ @ C>>A)|<a[C]>B -> <tau>n~ @ (A|B))",
       com(false, "com")});
  add({"wcom", kWL, outParSorts, true, true, "weak variant of com", com(true, "wcom")});

  auto res_in = [](bool weak, const char* id) {
    return [weak, id](const Bindings& b) {
      Need g{b, id};
      Name a = g.n("a"), nb = g.n("b");
      FormPtr A = g.f("A"), B = g.f("B");
      FormPtr prem;
      if (weak)
        prem = F::land(F::neq(a, nb),
                       F::iff(F::land(F::not_free(a, B), F::no_bound(B)), B));
      else
        prem = conj({F::neq(a, nb), F::iff(F::not_free(a, B), B),
                     F::iff(F::no_bound(B), B)});
      FormPtr inner = weak ? F::weak_in(nb, B, A) : F::dia_in(nb, B, A);
      FormPtr outer = weak ? F::weak_in(nb, B, F::reveal(a, A))
                           : F::dia_in(nb, B, F::reveal(a, A));
      return F::implies(prem, F::implies(F::reveal(a, inner), outer));
    };
  };
  const std::map<std::string, MetaSort> resInSorts = {
      {"a", MetaSort::NameSort}, {"b", MetaSort::NameSort}, {"A", MetaSort::Formula},
      {"B", MetaSort::Formula}};
  add({"res-in", kSL | kMuSL, resInSorts, true, true,
       "(a != b and ((- a)B <-> B) and ((~-)B <-> B)) -> (a @ <b<B>>A -> <b<B>>a @ A)",
       res_in(false, "res-in")});
  add({"wres-in", kWL, resInSorts, true, true, "weak variant of res-in",
       res_in(true, "wres-in")});

  auto res_out = [](bool weak, bool dropNoBound, const char* id) {
    return [weak, dropNoBound, id](const Bindings& b) {
      Need g{b, id};
      Name a = g.n("a"), c = g.n("c");
      auto bl = g.nl("n");
      FormPtr A = g.f("A"), B = g.f("B");
      std::vector<FormPtr> prem;
      for (auto& bi : bl) prem.push_back(F::neq(a, bi));
      prem.push_back(F::neq(a, c));
      prem.push_back(F::iff(F::not_free(a, B), B));
      if (!dropNoBound) prem.push_back(F::iff(F::no_bound(B), B));
      FormPtr payload = revs(bl, B);
      FormPtr inner = weak ? F::weak_out(c, payload, A) : F::dia_out(c, payload, A);
      FormPtr outer = weak ? F::weak_out(c, payload, F::reveal(a, A))
                           : F::dia_out(c, payload, F::reveal(a, A));
      return F::implies(conj(prem), F::implies(F::reveal(a, inner), outer));
    };
  };
  const std::map<std::string, MetaSort> resOutSorts = {
      {"a", MetaSort::NameSort}, {"c", MetaSort::NameSort}, {"n", MetaSort::NameList},
      {"A", MetaSort::Formula}, {"B", MetaSort::Formula}};
  add({"res-out", kSL | kMuSL, resOutSorts, true, true,
       "(a != n~, a != c, ((- a)B <-> B), ((~-)B <-> B)) -> (a @ <'c<n~ @ B>>A -> <'c<n~ @ B>>a @ A)",
       res_out(false, false, "res-out")});
  add({"wres-out", kWL, resOutSorts, true, true, "weak variant of res-out",
       res_out(true, false, "wres-out")});
  add({"res-out-free", kSL | kMuSL, resOutSorts, false, true,
       "res-out without the (~-) premise", res_out(false, true, "res-out-free")});
  add({"wres-out-free", kWL, resOutSorts, false, true,
       "weak variant of res-out-free", res_out(true, true, "wres-out-free")});

  auto open_ax = [](bool weak, bool dropNoBound, const char* id) {
    return [weak, dropNoBound, id](const Bindings& b) {
      Need g{b, id};
      Name a = g.n("a"), nb = g.n("b");
      auto cl = g.nl("n");
      FormPtr A = g.f("A"), B = g.f("B");
      std::vector<FormPtr> prem;
      prem.push_back(F::neq(a, nb));
      for (auto& ci : cl) prem.push_back(F::neq(nb, ci));
      prem.push_back(F::implies(B, F::lnot(F::not_free(nb, F::truth()))));
      if (!dropNoBound) prem.push_back(F::iff(F::no_bound(B), B));
      FormPtr innerPayload = revs(cl, B);
      std::vector<Name> opened{nb};
      opened.insert(opened.end(), cl.begin(), cl.end());
      FormPtr outerPayload = revs(opened, B);
      FormPtr inner = weak ? F::weak_out(a, innerPayload, A) : F::dia_out(a, innerPayload, A);
      FormPtr outer = weak ? F::weak_out(a, outerPayload, A) : F::dia_out(a, outerPayload, A);
      return F::implies(conj(prem), F::implies(F::reveal(nb, inner), outer));
    };
  };
  const std::map<std::string, MetaSort> openSorts = {
      {"a", MetaSort::NameSort}, {"b", MetaSort::NameSort}, {"n", MetaSort::NameList},
      {"A", MetaSort::Formula}, {"B", MetaSort::Formula}};
  add({"open", kSL | kMuSL, openSorts, true, true,
       "(a != b, b != n~, (B -> not (- b)T), ((~-)B <-> B)) -> (b @ <'a<n~ @ B>>A -> <'a<b @ n~ @ B>>A)",
       open_ax(false, false, "open")});
  add({"wopen", kWL, openSorts, true, true, "weak variant of open",
       open_ax(true, false, "wopen")});
  add({"open-free", kSL | kMuSL, openSorts, false, true,
       "open without the (~-) premise", open_ax(false, true, "open-free")});
  add({"wopen-free", kWL, openSorts, false, true, "weak variant of open-free",
       open_ax(true, true, "wopen-free")});

  auto box_dia = [](bool weak, bool toDia, const char* id) {
    return [weak, toDia, id](const Bindings& b) {
      Need g{b, id};
      Name a = g.n("a");
      FormPtr A = g.f("A"), B = g.f("B");
      if (toDia) {
        FormPtr boxF = weak ? F::weak_box_in(a, B, A) : F::box_in(a, B, A);
        FormPtr diaF = weak ? F::weak_in(a, B, A) : F::dia_in(a, B, A);
        return F::implies(boxF, diaF);
      }
      require(as_process(B).has_value(), id, "B must be syntactically a process");
      FormPtr diaF = weak ? F::weak_in(a, B, A) : F::dia_in(a, B, A);
      FormPtr boxF = weak ? F::weak_box_in(a, B, A) : F::box_in(a, B, A);
      return F::implies(diaF, boxF);
    };
  };
  const std::map<std::string, MetaSort> boxDiaSorts = {
      {"a", MetaSort::NameSort}, {"A", MetaSort::Formula}, {"B", MetaSort::Formula}};
  add({"box-to-dia", kSL | kMuSL, boxDiaSorts, true, true, "<a[B]>A -> <a<B>>A",
       box_dia(false, true, "box-to-dia")});
  add({"dia-to-box", kSL | kMuSL, boxDiaSorts, true, true,
       "<a<B>>A -> <a[B]>A   (B a process)", box_dia(false, false, "dia-to-box")});
  add({"wbox-to-dia", kWL, boxDiaSorts, true, true, "<<a[B]>>A -> <<a<B>>>A",
       box_dia(true, true, "wbox-to-dia")});
  add({"wdia-to-box", kWL, boxDiaSorts, true, true,
       "<<a<B>>>A -> <<a[B]>>A   (B a process)", box_dia(true, false, "wdia-to-box")});

  add({"weps-res", kWL, {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}}, true, true,
       "a @ <<eps>>A -> <<eps>>(a @ A)",
       [](const Bindings& b) {
         Need g{b, "weps-res"};
         return F::implies(F::reveal(g.n("a"), F::weak_eps(g.f("A"))),
                           F::weak_eps(F::reveal(g.n("a"), g.f("A"))));
       }});

  // --- fixpoint ----------------------------------------------------------
  add({"mu-unfold", kMuSL,
       {{"X", MetaSort::VarSort}, {"A", MetaSort::Formula}}, true, true,
       "A(mu X.A) -> mu X.A",
       [](const Bindings& b) {
         Need g{b, "mu-unfold"};
         ProcVar x = g.v("X");
         FormPtr body = g.f("A");
         require(positive_in(body, x), "mu-unfold", "X must occur positively in A");
         FormPtr muF = F::mu(x, body);
         return F::implies(formula_subst(body, x, muF), muF);
       }});

  // --- derived additions --------------------------------------------------
  add({"eps-refl", kWL, FS, false, true, "A -> <<eps>>A",
       [](const Bindings& b) {
         Need g{b, "eps-refl"};
         return F::implies(g.f("A"), F::weak_eps(g.f("A")));
       }});
  add({"res-tau", kSL | kMuSL, {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}},
       false, true, "a @ <tau>A -> <tau>(a @ A)",
       [](const Bindings& b) {
         Need g{b, "res-tau"};
         return F::implies(F::reveal(g.n("a"), F::dia_tau(g.f("A"))),
                           F::dia_tau(F::reveal(g.n("a"), g.f("A"))));
       }});
  add({"notfree-rev-other", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"b", MetaSort::NameSort}, {"A", MetaSort::Formula}},
       false, true, "a != b -> ((- a)(b @ A) <-> b @ (- a)A)",
       [](const Bindings& b) {
         Need g{b, "notfree-rev-other"};
         Name a = g.n("a"), nb = g.n("b");
         return F::implies(F::neq(a, nb),
                           F::iff(F::not_free(a, F::reveal(nb, g.f("A"))),
                                  F::reveal(nb, F::not_free(a, g.f("A")))));
       }});
  add({"notfree-conj", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}}, false, true,
       "((- a)T and A) <-> (- a)A",
       [](const Bindings& b) {
         Need g{b, "notfree-conj"};
         Name a = g.n("a");
         return F::iff(F::land(F::not_free(a, F::truth()), g.f("A")),
                       F::not_free(a, g.f("A")));
       }});
  add({"rev-vac", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"A", MetaSort::Formula}}, false, true,
       "a @ A <-> A   (A a process, a not free in A)",
       [](const Bindings& b) {
         Need g{b, "rev-vac"};
         Name a = g.n("a");
         FormPtr A = g.f("A");
         require(as_process(A).has_value(), "rev-vac", "A must be syntactically a process");
         require(!name_in(fn(A), a), "rev-vac", "a must not be free in A");
         return F::iff(F::reveal(a, A), A);
       }});
  add({"alpha-rev", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"b", MetaSort::NameSort}, {"A", MetaSort::Formula}},
       false, true, "a @ A -> b @ A{b/a}   (A a process, b fresh for A)",
       [](const Bindings& b) {
         Need g{b, "alpha-rev"};
         Name a = g.n("a"), nb = g.n("b");
         FormPtr A = g.f("A");
         require(as_process(A).has_value(), "alpha-rev", "A must be syntactically a process");
         auto names = fn(A);
         require(!(a == nb), "alpha-rev", "a and b must be distinct");
         require(!name_in(names, nb), "alpha-rev", "b must not be free in A");
         return F::implies(F::reveal(a, A),
                           F::reveal(nb, formula_rename_name(A, a, nb)));
       }});
  add({"alpha-in", kSL | kWL | kMuSL,
       {{"a", MetaSort::NameSort}, {"X", MetaSort::VarSort}, {"Y", MetaSort::VarSort},
        {"A", MetaSort::Formula}},
       false, true, "in a(X).A -> in a(Y).A{Y/X}   (A a process, Y fresh for A)",
       [](const Bindings& b) {
         Need g{b, "alpha-in"};
         ProcVar x = g.v("X"), y = g.v("Y");
         FormPtr A = g.f("A");
         require(as_process(A).has_value(), "alpha-in", "A must be syntactically a process");
         require(!(x == y), "alpha-in", "X and Y must be distinct");
         require(!var_in(fpv(A), y), "alpha-in", "Y must not be free in A");
         return F::implies(F::in_prefix(g.n("a"), x, A),
                           F::in_prefix(g.n("a"), y, formula_rename_var(A, x, y)));
       }});

  return cat;
}

std::vector<RuleSpec> build_rules() {
  std::vector<RuleSpec> rules;
  auto add = [&](RuleSpec r) { rules.push_back(std::move(r)); };

  auto modal_head = [](const FormPtr& f) {
    switch (f->kind) {
      case FKind::DiaTau:
      case FKind::DiaIn:
      case FKind::BoxIn:
      case FKind::DiaOut:
      case FKind::WeakEps:
      case FKind::WeakIn:
      case FKind::WeakBoxIn:
      case FKind::WeakOut:
        return true;
      default:
        return false;
    }
  };
  auto same_modal_frame = [](const FormPtr& f, const FormPtr& g) {
    if (f->kind != g->kind || !(f->name == g->name)) return false;
    bool binary = f->b != nullptr;
    if (binary != (g->b != nullptr)) return false;
    if (binary) return formula_alpha_eq(f->a, g->a);  // payload fixed
    return true;
  };
  auto cont_of = [](const FormPtr& f) { return f->b ? f->b : f->a; };

  // <alpha>A, A -> B  |-  <alpha>B     (strong instances)
  auto mono_dia = [modal_head, same_modal_frame, cont_of](
                      const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
    if (!modal_head(prem[0]) || !modal_head(concl)) return "premise 1 or conclusion not modal";
    if (!same_modal_frame(prem[0], concl)) return "modal frames differ";
    FormPtr l, r;
    if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
    if (!formula_alpha_eq(l, cont_of(prem[0]))) return "implication lhs mismatch";
    if (!formula_alpha_eq(r, cont_of(concl))) return "implication rhs mismatch";
    return "";
  };
  add({"mono-dia", kSL | kMuSL, 2, true, mono_dia});
  add({"wmono-dia", kWL, 2, true, mono_dia});

  add({"mono-in-prefix", kSL | kWL | kMuSL, 2, true,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         if (prem[0]->kind != FKind::InPrefix || concl->kind != FKind::InPrefix)
           return "not an input prefix";
         if (!(prem[0]->name == concl->name) || !(prem[0]->var == concl->var))
           return "prefix subject/binder differ";
         FormPtr l, r;
         if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
         if (!formula_alpha_eq(l, prem[0]->a) || !formula_alpha_eq(r, concl->a))
           return "implication does not connect the bodies";
         return "";
       }});
  add({"mono-out-cont", kSL | kWL | kMuSL, 2, true,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         if (prem[0]->kind != FKind::OutPrefix || concl->kind != FKind::OutPrefix)
           return "not an output prefix";
         if (!(prem[0]->name == concl->name) || !formula_alpha_eq(prem[0]->a, concl->a))
           return "subject/payload differ";
         FormPtr l, r;
         if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
         if (!formula_alpha_eq(l, prem[0]->b) || !formula_alpha_eq(r, concl->b))
           return "implication does not connect the continuations";
         return "";
       }});
  add({"mono-out-payload", kSL | kWL | kMuSL, 2, true,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         if (prem[0]->kind != FKind::OutPrefix || concl->kind != FKind::OutPrefix)
           return "not an output prefix";
         if (!(prem[0]->name == concl->name) || !formula_alpha_eq(prem[0]->b, concl->b))
           return "subject/continuation differ";
         FormPtr l, r;
         if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
         if (!formula_alpha_eq(l, prem[0]->a) || !formula_alpha_eq(r, concl->a))
           return "implication does not connect the payloads";
         return "";
       }});
  auto anti_payload = [](FKind kind) {
    return [kind](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
      if (prem[0]->kind != kind || concl->kind != kind) return "wrong modality";
      if (!(prem[0]->name == concl->name) || !formula_alpha_eq(prem[0]->b, concl->b))
        return "subject/continuation differ";
      FormPtr l, r;
      if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
      // contravariant: C -> B turns <._<B>> into <._<C>>
      if (!formula_alpha_eq(r, prem[0]->a) || !formula_alpha_eq(l, concl->a))
        return "implication does not connect the payloads contravariantly";
      return "";
    };
  };
  add({"anti-dia-out-payload", kSL | kMuSL, 2, true, anti_payload(FKind::DiaOut)});
  add({"anti-box-in-payload", kSL | kMuSL, 2, true, anti_payload(FKind::BoxIn)});
  add({"wanti-dia-out-payload", kWL, 2, true, anti_payload(FKind::WeakOut)});
  add({"wanti-box-in-payload", kWL, 2, true, anti_payload(FKind::WeakBoxIn)});

  add({"mono-in-adj", kSL | kWL | kMuSL, 2, true,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         if (prem[0]->kind != FKind::InAdjoint || concl->kind != FKind::InAdjoint)
           return "not an input adjoint";
         if (!(prem[0]->name == concl->name) || !(prem[0]->var == concl->var))
           return "adjoint subject/binder differ";
         FormPtr l, r;
         if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
         if (!formula_alpha_eq(l, prem[0]->a) || !formula_alpha_eq(r, concl->a))
           return "implication does not connect the bodies";
         return "";
       }});
  add({"mono-out-adj", kSL | kWL | kMuSL, 2, true,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         if (prem[0]->kind != FKind::OutAdjoint || concl->kind != FKind::OutAdjoint)
           return "not an output adjoint";
         if (!(prem[0]->name == concl->name)) return "adjoint subjects differ";
         FormPtr l, r;
         if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
         if (!formula_alpha_eq(l, prem[0]->a) || !formula_alpha_eq(r, concl->a))
           return "implication does not connect the bodies";
         return "";
       }});
  add({"mono-par", kSL | kWL | kMuSL, 1, true,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         FormPtr pl, pr, cl, cr;
         if (!is_implication(prem[0], pl, pr)) return "premise is not an implication";
         if (!is_implication(concl, cl, cr)) return "conclusion is not an implication";
         if (cl->kind != FKind::Par || cr->kind != FKind::Par)
           return "conclusion sides are not compositions";
         if (!formula_alpha_eq(cl->a, pl) || !formula_alpha_eq(cr->a, pr))
           return "left components do not match the premise";
         if (!formula_alpha_eq(cl->b, cr->b)) return "right components differ";
         return "";
       }});
  auto mono_wrap1 = [](FKind kind, bool matchName) {
    return [kind, matchName](const std::vector<FormPtr>& prem,
                             const FormPtr& concl) -> std::string {
      if (prem[0]->kind != kind || concl->kind != kind) return "wrong head";
      if (matchName && !(prem[0]->name == concl->name)) return "names differ";
      FormPtr l, r;
      if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
      if (!formula_alpha_eq(l, prem[0]->a) || !formula_alpha_eq(r, concl->a))
        return "implication does not connect the bodies";
      return "";
    };
  };
  add({"mono-rev", kSL | kWL | kMuSL, 2, true, mono_wrap1(FKind::Reveal, true)});
  add({"mono-notfree", kSL | kWL | kMuSL, 2, true, mono_wrap1(FKind::NotFree, true)});
  add({"mono-nobound", kSL | kWL | kMuSL, 2, true, mono_wrap1(FKind::NoBound, false)});

  // weak chaining rules
  add({"wchain-post", kWL, 2, true,
       [modal_head, same_modal_frame, cont_of](const std::vector<FormPtr>& prem,
                                               const FormPtr& concl) -> std::string {
         if (!modal_head(prem[0]) || !modal_head(concl)) return "not modal";
         if (!same_modal_frame(prem[0], concl)) return "modal frames differ";
         FormPtr l, r;
         if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
         if (r->kind != FKind::WeakEps) return "implication rhs is not <<eps>>";
         if (!formula_alpha_eq(l, cont_of(prem[0])) || !formula_alpha_eq(r->a, cont_of(concl)))
           return "implication does not chain the continuations";
         return "";
       }});
  add({"wchain-pre", kWL, 2, true,
       [modal_head, same_modal_frame](const std::vector<FormPtr>& prem,
                                      const FormPtr& concl) -> std::string {
         if (prem[0]->kind != FKind::WeakEps) return "premise 1 is not <<eps>>";
         FormPtr l, r;
         if (!is_implication(prem[1], l, r)) return "premise 2 is not an implication";
         if (!modal_head(r) || !modal_head(concl)) return "not modal";
         if (!formula_alpha_eq(l, prem[0]->a)) return "implication lhs mismatch";
         if (!same_modal_frame(r, concl)) return "modal frames differ";
         FormPtr rc = r->b ? r->b : r->a;
         FormPtr cc = concl->b ? concl->b : concl->a;
         if (!formula_alpha_eq(rc, cc)) return "continuations differ";
         return "";
       }});

  // derived implication forms of the congruence rules
  add({"rev-mono-imp", kSL | kWL | kMuSL, 1, false,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         FormPtr pl, pr, cl, cr;
         if (!is_implication(prem[0], pl, pr)) return "premise is not an implication";
         if (!is_implication(concl, cl, cr)) return "conclusion is not an implication";
         if (cl->kind != FKind::Reveal || cr->kind != FKind::Reveal)
           return "conclusion sides are not revelations";
         if (!(cl->name == cr->name)) return "revelation names differ";
         if (!formula_alpha_eq(cl->a, pl) || !formula_alpha_eq(cr->a, pr))
           return "bodies do not match the premise";
         return "";
       }});
  add({"in-mono-imp", kSL | kWL | kMuSL, 1, false,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         FormPtr pl, pr, cl, cr;
         if (!is_implication(prem[0], pl, pr)) return "premise is not an implication";
         if (!is_implication(concl, cl, cr)) return "conclusion is not an implication";
         if (cl->kind != FKind::InPrefix || cr->kind != FKind::InPrefix)
           return "conclusion sides are not input prefixes";
         if (!(cl->name == cr->name) || !(cl->var == cr->var))
           return "prefix subject/binder differ";
         if (!formula_alpha_eq(cl->a, pl) || !formula_alpha_eq(cr->a, pr))
           return "bodies do not match the premise";
         return "";
       }});
  add({"out-cont-imp", kSL | kWL | kMuSL, 1, false,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         FormPtr pl, pr, cl, cr;
         if (!is_implication(prem[0], pl, pr)) return "premise is not an implication";
         if (!is_implication(concl, cl, cr)) return "conclusion is not an implication";
         if (cl->kind != FKind::OutPrefix || cr->kind != FKind::OutPrefix)
           return "conclusion sides are not output prefixes";
         if (!(cl->name == cr->name) || !formula_alpha_eq(cl->a, cr->a))
           return "subject/payload differ";
         if (!formula_alpha_eq(cl->b, pl) || !formula_alpha_eq(cr->b, pr))
           return "continuations do not match the premise";
         return "";
       }});
  add({"out-payload-imp", kSL | kWL | kMuSL, 1, false,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         FormPtr pl, pr, cl, cr;
         if (!is_implication(prem[0], pl, pr)) return "premise is not an implication";
         if (!is_implication(concl, cl, cr)) return "conclusion is not an implication";
         if (cl->kind != FKind::OutPrefix || cr->kind != FKind::OutPrefix)
           return "conclusion sides are not output prefixes";
         if (!(cl->name == cr->name) || !formula_alpha_eq(cl->b, cr->b))
           return "subject/continuation differ";
         if (!formula_alpha_eq(cl->a, pl) || !formula_alpha_eq(cr->a, pr))
           return "payloads do not match the premise";
         return "";
       }});
  add({"notfree-mono-imp", kSL | kWL | kMuSL, 1, false,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         FormPtr pl, pr, cl, cr;
         if (!is_implication(prem[0], pl, pr)) return "premise is not an implication";
         if (!is_implication(concl, cl, cr)) return "conclusion is not an implication";
         if (cl->kind != FKind::NotFree || cr->kind != FKind::NotFree)
           return "conclusion sides are not (- a) forms";
         if (!(cl->name == cr->name)) return "names differ";
         if (!formula_alpha_eq(cl->a, pl) || !formula_alpha_eq(cr->a, pr))
           return "bodies do not match the premise";
         return "";
       }});
  add({"nobound-mono-imp", kSL | kWL | kMuSL, 1, false,
       [](const std::vector<FormPtr>& prem, const FormPtr& concl) -> std::string {
         FormPtr pl, pr, cl, cr;
         if (!is_implication(prem[0], pl, pr)) return "premise is not an implication";
         if (!is_implication(concl, cl, cr)) return "conclusion is not an implication";
         if (cl->kind != FKind::NoBound || cr->kind != FKind::NoBound)
           return "conclusion sides are not (~-) forms";
         if (!formula_alpha_eq(cl->a, pl) || !formula_alpha_eq(cr->a, pr))
           return "bodies do not match the premise";
         return "";
       }});

  return rules;
}

}  // namespace

const std::vector<AxiomSchema>& axiom_catalogue() {
  static const std::vector<AxiomSchema> cat = build_catalogue();
  return cat;
}

const std::vector<RuleSpec>& rule_catalogue() {
  static const std::vector<RuleSpec> rules = build_rules();
  return rules;
}

const AxiomSchema* find_schema(const std::string& id) {
  for (auto& s : axiom_catalogue())
    if (s.id == id) return &s;
  return nullptr;
}

const RuleSpec* find_rule(const std::string& id) {
  for (auto& r : rule_catalogue())
    if (r.id == id) return &r;
  return nullptr;
}

FormPtr instantiate_axiom(const std::string& id, const Bindings& b) {
  const AxiomSchema* s = find_schema(id);
  if (!s) throw SideConditionError("unknown axiom schema: " + id);
  return s->build(b);
}

}  // namespace hopi::proofs
