#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopi/corpus.hpp"
#include "hopi/formula_parse.hpp"
#include "hopi/parse.hpp"
#include "hopi/translate.hpp"

using namespace hopi;

static FormPtr Fm(const std::string& s) { return parse_formula(s); }
static ProcPtr P(const std::string& s) { return parse_process(s); }

TEST_CASE("formula parsing") {
  CHECK(Fm("<tau> T")->kind == FKind::DiaTau);
  FormPtr mu = Fm("mu X. (0 or <tau> X)");
  REQUIRE(mu->kind == FKind::Mu);
  CHECK(mu->var.id == "X");
  CHECK_THROWS_AS(Fm("mu X. not X"), ParseError);

  CHECK(Fm("<a<T>>T")->kind == FKind::DiaIn);
  CHECK(Fm("<a[T]>T")->kind == FKind::BoxIn);
  CHECK(Fm("<'a<T>>T")->kind == FKind::DiaOut);
  CHECK(Fm("<<eps>>T")->kind == FKind::WeakEps);
  CHECK(Fm("<<a<T>>>T")->kind == FKind::WeakIn);
  CHECK(Fm("<<a[T]>>T")->kind == FKind::WeakBoxIn);
  CHECK(Fm("<<'a<T>>>T")->kind == FKind::WeakOut);
  CHECK(Fm("in a(X).X")->kind == FKind::InPrefix);
  CHECK(Fm("T \\ in a(X)")->kind == FKind::InAdjoint);
  CHECK(Fm("out a<0>.T")->kind == FKind::OutPrefix);
  CHECK(Fm("T \\ out a")->kind == FKind::OutAdjoint);
  CHECK(Fm("a @ T")->kind == FKind::Reveal);
  CHECK(Fm("T / a")->kind == FKind::Hide);
  CHECK(Fm("(N x) x != a")->kind == FKind::FreshName);
  CHECK(Fm("(NV X) X")->kind == FKind::FreshVar);
  CHECK(Fm("(- a) T")->kind == FKind::NotFree);
  CHECK(Fm("(~-) T")->kind == FKind::NoBound);
  CHECK(Fm("T |> <tau>T")->kind == FKind::Guarantee);
  CHECK(Fm("0 | T")->kind == FKind::Par);
  // or / implies are sugar over negation and conjunction
  FormPtr orF = Fm("0 or T");
  CHECK(orF->kind == FKind::Not);
  CHECK(orF->sugar == Sugar::Or);
}

TEST_CASE("printer round trip") {
  const char* samples[] = {
      "<tau>T", "mu X. (0 or <tau>X)", "T |> (0 | F)", "a @ (in a(X).(X | 0))",
      "(N x)(x != a and (- x)T)", "out a<in b(U).0>.T \\ out c",
      "<<a[0]>>(<<eps>>0)", "not (T -> F)", "T / a \\ out b",
      "(NV X) in a(X). X",
  };
  for (auto* s : samples) {
    FormPtr f = Fm(s);
    CHECK(formula_alpha_eq(f, Fm(print(f))));
  }
}

TEST_CASE("dialects") {
  CHECK(in_dialect(Fm("<tau>T"), Dialect::SL));
  CHECK_FALSE(in_dialect(Fm("<tau>T"), Dialect::WL));
  CHECK(in_dialect(Fm("<<eps>>T"), Dialect::WL));
  CHECK_FALSE(in_dialect(Fm("<<eps>>T"), Dialect::SL));
  CHECK(in_dialect(Fm("mu X. (0 or <tau>X)"), Dialect::MuSL));
  CHECK_FALSE(in_dialect(Fm("mu X. (0 or <tau>X)"), Dialect::SL));
  CHECK_FALSE(dialect_of(Formula::land(Fm("<tau>T"), Fm("<<eps>>T"))).has_value());
}

TEST_CASE("sublogic membership") {
  CHECK(in_sublogic_L(Fm("<a<T>>T")));
  CHECK(in_sublogic_L(Fm("not (<'b<T>>T and <tau>(<a<T>>T))")));
  CHECK(in_sublogic_L(Fm("<a<T>>T |> <tau>(<a<T>>T)")));
  CHECK_FALSE(in_sublogic_L(Fm("0")));
  CHECK_FALSE(in_sublogic_L(Fm("<a<0>>T")));
  // sublogic formulas are strong-dialect formulas
  for (std::uint64_t seed = 0; seed < 100; seed++) {
    FormPtr f = corpus::generate_formula(seed, Dialect::SL, 5);
    if (in_sublogic_L(f)) CHECK(in_dialect(f, Dialect::SL));
  }
}

TEST_CASE("renaming substitutions") {
  CHECK(formula_alpha_eq(formula_rename_name(Fm("a @ T"), Name{"a"}, Name{"b"}),
                         Fm("b @ T")));
  // freshness quantifier binder is renamed apart when it would capture
  FormPtr f = Fm("(N x)(x != a)");
  FormPtr g = formula_rename_name(f, Name{"a"}, Name{"x"});
  REQUIRE(g->kind == FKind::FreshName);
  CHECK(g->name.id != "x");
  CHECK(formula_alpha_eq(g, Fm("(N y)(y != x)")));
}

TEST_CASE("fixpoint unfolding substitution") {
  FormPtr mu = Fm("mu X. (0 or <tau> X)");
  FormPtr once = formula_subst(mu->a, mu->var, mu);
  CHECK(formula_alpha_eq(once, Fm("0 or <tau>(mu X. (0 or <tau>X))")));
  // prefix patterns shadow their bodies
  FormPtr pat = Fm("in a(X).X");
  CHECK(formula_alpha_eq(formula_subst(pat, ProcVar{"X"}, Fm("T")), pat));
}

TEST_CASE("positivity") {
  CHECK(positive_in(Fm("0 or <tau>X"), ProcVar{"X"}));
  CHECK_FALSE(positive_in(Fm("not X"), ProcVar{"X"}));
  CHECK(positive_in(Fm("not not X"), ProcVar{"X"}));
  // the left of an implication is a negative position
  CHECK_FALSE(positive_in(Fm("X -> T"), ProcVar{"X"}));
  CHECK(positive_in(Fm("T -> X"), ProcVar{"X"}));
}

TEST_CASE("process shape reader") {
  CHECK(alpha_eq(*as_process(Fm("out a<0>.0")), P("a<0>.0")));
  CHECK_FALSE(as_process(Fm("<tau>T")).has_value());
  CHECK(alpha_eq(*as_process(Fm("a @ (in a(X).0)")), P("(nu a)(a(X).0)")));
  // embedding then reading back is the identity
  for (std::uint64_t seed = 0; seed < 120; seed++) {
    ProcPtr p = corpus::generate_process(seed, 6);
    auto back = as_process(embed_process(p));
    REQUIRE(back.has_value());
    CHECK(alpha_eq(*back, p));
  }
}

TEST_CASE("quantified translation") {
  CHECK(formula_alpha_eq(translate_tps(P("a<0>.0")), Fm("out a<0>.0")));
  CHECK(formula_alpha_eq(translate_tps(P("(nu a)(a(X).0)")),
                         Fm("(N a)(a @ ((NV X) in a(X).0))")));
  CHECK(translate_tps(Process::mkvar(ProcVar{"X"}))->kind == FKind::PropVar);
}

TEST_CASE("weak-to-fixpoint translation") {
  FormPtr t1 = translate_twm(Fm("<<eps>>0"));
  CHECK(formula_alpha_eq(t1, Fm("mu X. (0 or <tau>X)")));
  FormPtr t2 = translate_twm(Fm("<<a<T>>>T"));
  CHECK(formula_alpha_eq(
      t2, Fm("mu X. (<a<T>>(mu Y. (T or <tau>Y)) or <tau>X)")));
  CHECK(formula_alpha_eq(translate_twm(Fm("0")), Fm("0")));
  CHECK_THROWS_AS(translate_twm(Fm("<tau>T")), std::invalid_argument);

  for (std::uint64_t seed = 0; seed < 200; seed++) {
    FormPtr f = corpus::generate_formula(seed, Dialect::WL, 5);
    FormPtr t = translate_twm(f);
    CHECK(in_dialect(t, Dialect::MuSL));
  }
}

TEST_CASE("replication combinator") {
  FormPtr b = bang(Fm("0"));
  REQUIRE(b->kind == FKind::Not);
  REQUIRE(b->a->kind == FKind::Mu);
  CHECK(positive_in(b->a->a, b->a->var));
  CHECK(fpv(bang(Fm("X"))) == std::vector<std::string>{"X"});
}

TEST_CASE("free name and variable computations survive renaming") {
  for (std::uint64_t seed = 0; seed < 150; seed++) {
    FormPtr f = corpus::generate_formula(seed, Dialect::MuSL, 6);
    auto names = fn(f);
    for (auto& n : names) {
      FormPtr g = formula_rename_name(f, Name{n}, Name{"fresh_q"});
      auto renamed = fn(g);
      CHECK(std::find(renamed.begin(), renamed.end(), n) == renamed.end());
    }
  }
}
