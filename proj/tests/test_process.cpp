#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopi/canonical.hpp"
#include "hopi/corpus.hpp"
#include "hopi/parse.hpp"
#include "hopi/syntax.hpp"
#include "support/oracle.hpp"

using namespace hopi;

static ProcPtr P(const std::string& s) { return parse_process(s); }

TEST_CASE("parsing the grammar") {
  CHECK(P("0")->kind == PKind::Nil);
  ProcPtr t = P("(nu a)(a(X).0 | a<0>.0)");
  REQUIRE(t->kind == PKind::Res);
  REQUIRE(t->a->kind == PKind::Par);
  CHECK(t->a->a->kind == PKind::Input);
  CHECK(t->a->b->kind == PKind::Output);

  // bare-prefix sugar: an input whose binder is never referenced
  ProcPtr s = P("b.0");
  REQUIRE(s->kind == PKind::Input);
  CHECK(s->name.id == "b");
  CHECK_FALSE(has_free_var(s->a, s->var));

  CHECK_THROWS_AS(P("a<0.0"), ParseError);
  CHECK_THROWS_AS(P("(nu X) 0"), ParseError);
  CHECK_THROWS_AS(P("a(b).0"), ParseError);
}

TEST_CASE("print then parse is identity up to alpha") {
  const char* samples[] = {
      "0", "a.0", "a(X).X", "a<b(U).U>.0", "(nu a)(a(X).0 | a<0>.0)",
      "a<0>.0 | b(X).(X | X)", "(nu a)(nu b)(a<b.0>.0)",
      "a(X).(X | b<X>.0)",
  };
  for (auto* s : samples) {
    ProcPtr t = P(s);
    CHECK(alpha_eq(t, P(print(t))));
  }
}

TEST_CASE("free names and variables") {
  ProcPtr t = P("(nu a)(a(X).b<X>.0)");
  CHECK(t->fn == std::vector<std::string>{"b"});
  CHECK(is_closed(t));
  CHECK(bn(t) == std::vector<std::string>{"a"});
  CHECK(bv(t) == std::vector<std::string>{"X"});
  CHECK_FALSE(is_closed(P("X | a<0>.0")));
}

TEST_CASE("depth measure") {
  CHECK(depth(P("0")) == 0);
  CHECK(depth(P("a<b(U).0>.a(V).0")) == 3);
  CHECK(depth(P("(nu a)(a(X).0)")) == 1);
  CHECK(depth(P("a<0>.0 | a<0>.0")) == 2);
}

TEST_CASE("substitution") {
  // base clause
  CHECK(alpha_eq(substitute(P("X"), ProcVar{"X"}, P("0")), P("0")));
  // no capture
  CHECK(alpha_eq(substitute(P("a(Y).X"), ProcVar{"X"}, P("b<0>.0")),
                 P("a(Y).b<0>.0")));
  // binder freshening: (nu b)X with b.0 inserted must not capture b
  ProcPtr t = substitute(parse_process("(nu b) X"), ProcVar{"X"}, P("b.0"));
  REQUIRE(t->kind == PKind::Res);
  CHECK(t->name.id != "b");
  CHECK(has_free_name(t, Name{"b"}));
  // shadowing stops substitution
  ProcPtr s = substitute(P("a(X).X"), ProcVar{"X"}, P("0"));
  CHECK(alpha_eq(s, P("a(X).X")));
}

TEST_CASE("normalization examples") {
  // scope shrinks past components that do not use the name
  ProcPtr t = canonical(P("(nu a)(b(X).0 | a<0>.0)"));
  bool sawUnrestricted = false;
  for (auto& c : components(t))
    if (c->kind == PKind::Input) sawUnrestricted = true;
  CHECK(sawUnrestricted);
  CHECK(congruent(P("(nu a)(b(X).0 | a<0>.0)"), P("b(X).0 | (nu a)(a<0>.0)")));

  CHECK(alpha_eq(canonical(P("a.0 | 0")), canonical(P("a.0"))));
  CHECK(canonical(P("(nu a) 0"))->kind == PKind::Nil);
  CHECK(canonical(P("(nu a)(nu b)(0 | 0)"))->kind == PKind::Nil);
}

TEST_CASE("normalize is idempotent and preserves free names") {
  for (std::uint64_t seed = 0; seed < 300; seed++) {
    ProcPtr t = corpus::generate_process(seed, 1 + static_cast<int>(seed % 8));
    ProcPtr c1 = canonical(t);
    ProcPtr c2 = canonical(c1);
    CHECK(print(c1) == print(c2));
    CHECK(t->fn == c1->fn);
    CHECK(t->fv == c1->fv);
  }
}

TEST_CASE("congruence examples") {
  CHECK(congruent(P("(nu b)(a<b(U).U>.0)"), P("(nu c)(a<c(U).U>.0)")));
  CHECK(congruent(P("(nu m)(nu n)(m<0>.0 | n<0>.0)"),
                  P("(nu n)(nu m)(m<0>.0 | n<0>.0)")));
  CHECK_FALSE(congruent(P("a<0>.0"), P("0")));
  CHECK(congruent(P("a<0>.0 | b<0>.0"), P("b<0>.0 | a<0>.0")));
  CHECK(congruent(P("a<0>.0"), P("a<0 | 0>.0")));
  CHECK_FALSE(congruent(P("a(X).0"), P("b(X).0")));
}

TEST_CASE("congruence is closed under the unary contexts") {
  for (std::uint64_t seed = 0; seed < 60; seed++) {
    ProcPtr p = corpus::generate_process(seed * 11 + 1, 4);
    auto members = oracle::class_members(p, 2, term_size(p) + 4);
    for (size_t i = 0; i < members.size() && i < 4; i++) {
      const ProcPtr& q = members[i];
      REQUIRE(congruent(p, q));
      CHECK(congruent(Process::input(Name{"z"}, ProcVar{"W"}, p),
                      Process::input(Name{"z"}, ProcVar{"W"}, q)));
      CHECK(congruent(Process::output(Name{"z"}, p, Process::nil()),
                      Process::output(Name{"z"}, q, Process::nil())));
      CHECK(congruent(Process::par(p, P("c.0")), Process::par(q, P("c.0"))));
      CHECK(congruent(Process::res(Name{"a"}, p), Process::res(Name{"a"}, q)));
    }
  }
}

TEST_CASE("congruence agrees with exhaustive rewriting on random terms") {
  std::vector<ProcPtr> terms;
  for (std::uint64_t seed = 0; seed < 40; seed++)
    terms.push_back(corpus::generate_process(seed * 7 + 3, 4));
  for (size_t i = 0; i < terms.size(); i++) {
    for (size_t j = i; j < std::min(terms.size(), i + 6); j++) {
      bool fast = congruent(terms[i], terms[j]);
      bool slow = oracle::congruent_by_rewriting(terms[i], terms[j]);
      CHECK(fast == slow);
    }
  }
}

TEST_CASE("depth is invariant across congruent rewrites") {
  for (std::uint64_t seed = 0; seed < 40; seed++) {
    ProcPtr p = corpus::generate_process(seed * 13 + 5, 5);
    // depth may only change when a vacuous restriction is erased, which
    // keeps it equal as well: d((nu a)P) = d(P)
    for (auto& q : oracle::class_members(p, 2, term_size(p) + 4))
      CHECK(depth(p) == depth(q));
  }
}

TEST_CASE("replication encoding") {
  ProcPtr p = P("b<0>.0");
  ProcPtr r = replication_encode(p, Name{"a"});
  CHECK(alpha_eq(r, P("(nu a)(a(X).(X|a<X>.0) | a<b<0>.0 | a(X).(X|a<X>.0)>.0)")));
  CHECK(r->fn == p->fn);
  CHECK_THROWS_AS(replication_encode(P("a<0>.0"), Name{"a"}), std::invalid_argument);
  ProcPtr r0 = replication_encode(P("0"), Name{"a"});
  CHECK(is_closed(r0));
}

TEST_CASE("rewrite trace replays to the canonical form") {
  for (std::uint64_t seed = 0; seed < 80; seed++) {
    ProcPtr p = corpus::generate_process(seed * 17 + 7, 6);
    RewriteTrace trace;
    ProcPtr c = canonical_traced(p, trace);
    CHECK(print(c) == print(canonical(p)));
    ProcPtr cur = p;
    for (auto& st : trace) {
      CHECK(print(cur) == print(st.before));
      cur = st.after;
    }
    CHECK(print(cur) == print(c));
  }
}
