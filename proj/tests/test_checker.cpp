#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopi/checker.hpp"
#include "hopi/corpus.hpp"
#include "hopi/formula_parse.hpp"
#include "hopi/parse.hpp"
#include "hopi/translate.hpp"
#include "support/oracle.hpp"

using namespace hopi;

static FormPtr Fm(const std::string& s) { return parse_formula(s); }
static ProcPtr P(const std::string& s) { return parse_process(s); }
static Budget B() { return Budget{}; }

static Outcome out(const std::string& p, const std::string& f) {
  return check(P(p), Fm(f), B()).outcome;
}

TEST_CASE("boolean and structural clauses") {
  CHECK(out("0", "T") == Outcome::Holds);
  CHECK(out("0", "F") == Outcome::Fails);
  CHECK(out("0", "0") == Outcome::Holds);
  CHECK(out("(nu a)(0|0)", "0") == Outcome::Holds);
  CHECK(out("a.0", "0") == Outcome::Fails);
  CHECK(out("0", "a != b") == Outcome::Holds);
  CHECK(out("0", "a != a") == Outcome::Fails);
  CHECK(out("a<0>.0", "out a<0>.T") == Outcome::Holds);
  CHECK(out("a<b.0>.0", "out a<0>.T") == Outcome::Fails);
  CHECK(out("a.b.0", "in a(X).in b(Y).0") == Outcome::Holds);
  CHECK(out("a.0 | b.0", "in a(X).0 | in b(Y).0") == Outcome::Holds);
  CHECK(out("a.0 | b.0", "in b(Y).0 | in a(X).0") == Outcome::Holds);
  CHECK(out("a.0", "0 | in a(X).0") == Outcome::Holds);
}

TEST_CASE("modalities") {
  CHECK(out("a<0>.0", "<'a<0>>T") == Outcome::Holds);
  CHECK(out("a<0>.0 | a(X).X", "<tau>T") == Outcome::Holds);
  CHECK(out("a<0>.0", "<tau>T") == Outcome::Fails);
  CHECK(out("a(X).X", "<a<0>>0") == Outcome::Holds);
  CHECK(out("a(X).X", "<a[0]>0") == Outcome::Holds);
  CHECK(out("b(X).X", "<a<0>>T") == Outcome::Fails);
  // extruded payload satisfies the restricted shape
  CHECK(out("(nu b)(a<b(U).U>.0)", "<'a<b @ (in b(U).U)>>T") == Outcome::Holds);
}

TEST_CASE("revelation and hiding") {
  CHECK(out("(nu a)(a<0>.0)", "a @ (out a<0>.0)") == Outcome::Holds);
  CHECK(out("(nu c)(c<0>.0)", "a @ (out a<0>.0)") == Outcome::Holds);
  CHECK(out("b<0>.0", "a @ (out b<0>.0)") == Outcome::Holds);  // vacuous reveal
  CHECK(out("a<0>.0", "a @ T") == Outcome::Fails);  // a occurs free
  CHECK(out("0", "(out a<0>.0) / a") == Outcome::Fails);
  CHECK(out("a<0>.0", "(a @ (out a<0>.0)) / a") == Outcome::Holds);
}

TEST_CASE("freeness operators") {
  CHECK(out("b<0>.0", "(- a) T") == Outcome::Holds);
  CHECK(out("a<0>.0", "(- a) T") == Outcome::Fails);
  CHECK(out("(nu a)(a<0>.0)", "(- a) T") == Outcome::Holds);
  CHECK(out("(nu a)(a<0>.0)", "(~-) T") == Outcome::Fails);
  CHECK(out("(nu a) 0", "(~-) 0") == Outcome::Holds);
}

TEST_CASE("fresh quantifiers") {
  CHECK(out("0", "(N x)(x != a)") == Outcome::Holds);
  CHECK(out("(nu b)(b<0>.0)", "(N x)(x @ (out x<0>.0))") == Outcome::Holds);
  CHECK(out("a(X).0", "(NV X)(in a(X).0)") == Outcome::Holds);
}

TEST_CASE("adjoints") {
  // A -> (in a(X).A) \ in a(X)
  CHECK(out("0", "(in a(X).0) \\ in a(X)") == Outcome::Holds);
  CHECK(out("0", "(out a<0>.0) \\ out a") == Outcome::Holds);
  CHECK(out("b.0", "(out a<b.0>.0) \\ out a") == Outcome::Holds);
  CHECK(out("b.0", "(out a<0>.0) \\ out a") == Outcome::Fails);
}

TEST_CASE("guarantee") {
  // spec examples
  CHECK(check(P("0"), Fm("T |> <tau>T"), B()).outcome == Outcome::Fails);
  CHECK(out("a(X).X", "(out a<0>.0) |> <tau>T") == Outcome::Holds);
  Verdict v = check(P("d(U).0"), Fm("(out a<0>.T) |> <'a<0>>T"), B());
  CHECK(v.outcome == Outcome::Unknown);
  CHECK(v.budget_hit);
}

TEST_CASE("refinement fixture") {
  ProcPtr p = P("(nu a)(a(X).d.X | a<c.0>.e.0)");
  FormPtr f = Fm("a @ ((<a[in c(U).0]>(in d(V).in c(W).0)) | (<'a<in c(U).0>>(in e(V).0)))");
  CHECK(check(p, f, B()).outcome == Outcome::Holds);
}

TEST_CASE("fixpoints") {
  CHECK(out("a<0>.0 | a(X).X", "mu X. (0 or <tau>X)") == Outcome::Holds);
  CHECK(out("0", "mu X. (0 or <tau>X)") == Outcome::Holds);
  CHECK(out("b<0>.0", "mu X. (0 or <tau>X)") == Outcome::Fails);
  Verdict v = check(P("a<0>.0 | a(X).X"), Fm("mu X. (0 or <tau>X)"), B());
  CHECK(v.outcome == Outcome::Holds);
}

TEST_CASE("weak modalities") {
  CHECK(out("(nu a)(a<0>.0 | a(X).b<0>.0)", "<<eps>>(<'b<0>>T)") == Outcome::Holds);
  CHECK(out("0", "<<eps>>0") == Outcome::Holds);
  CHECK(out("b<0>.0", "<<eps>>0") == Outcome::Fails);
  CHECK(out("(nu a)(a<0>.0 | a(X).b<0>.0)", "<<'b<0>>>T") == Outcome::Holds);
  CHECK(out("a(X).X", "<<a<0>>>(<<eps>>0)") == Outcome::Holds);
}

TEST_CASE("negation coherence and equivalence invariance") {
  Checker checker(B());
  for (std::uint64_t seed = 0; seed < 120; seed++) {
    ProcPtr p = corpus::generate_process(seed * 3 + 1, 4);
    FormPtr f = corpus::generate_formula(seed * 5 + 2, Dialect::SL, 4);
    Verdict v = checker.check(p, f);
    Verdict nv = checker.check(p, Formula::lnot(f));
    if (v.outcome == Outcome::Holds) CHECK(nv.outcome == Outcome::Fails);
    if (v.outcome == Outcome::Fails) CHECK(nv.outcome == Outcome::Holds);
    if (v.outcome == Outcome::Unknown) CHECK(nv.outcome == Outcome::Unknown);
    for (auto& q : oracle::class_members(p, 1, term_size(p) + 4)) {
      CHECK(checker.check(q, f).outcome == v.outcome);
    }
  }
}

TEST_CASE("budget monotonicity never flips definite verdicts") {
  Budget small{2, 12, 2, 2};
  Budget large{3, 48, 6, 6};
  Checker cs(small), cl(large);
  for (std::uint64_t seed = 0; seed < 100; seed++) {
    ProcPtr p = corpus::generate_process(seed * 7 + 3, 4);
    FormPtr f = corpus::generate_formula(seed * 11 + 5, Dialect::MuSL, 4);
    Outcome a = cs.check(p, f).outcome;
    Outcome b = cl.check(p, f).outcome;
    if (a == Outcome::Holds) CHECK(b == Outcome::Holds);
    if (a == Outcome::Fails) CHECK(b == Outcome::Fails);
  }
}

TEST_CASE("agreement with the two-valued evaluator on sampled exact pairs") {
  Checker checker(B());
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 400 && checked < 150; seed++) {
    ProcPtr p = corpus::generate_process(seed * 3 + 2, 4);
    if (!restriction_free(p) && term_size(p) > 4) continue;
    FormPtr f = corpus::generate_formula(seed * 13 + 7, Dialect::SL, 4);
    if (!oracle::in_exact_fragment(f)) continue;
    checked++;
    Verdict v = checker.check(p, f);
    REQUIRE(v.outcome != Outcome::Unknown);
    bool expect = oracle::eval_def6(p, f);
    CHECK((v.outcome == Outcome::Holds) == expect);
  }
  CHECK(checked >= 100);
}
