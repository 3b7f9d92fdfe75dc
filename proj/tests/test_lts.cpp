#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hopi/canonical.hpp"
#include "hopi/corpus.hpp"
#include "hopi/lts.hpp"
#include "hopi/parse.hpp"
#include "support/oracle.hpp"

using namespace hopi;

static ProcPtr P(const std::string& s) { return parse_process(s); }

TEST_CASE("single communication") {
  auto ts = step(P("a<0>.0 | a(X).X"), StepQuery::tau());
  REQUIRE(ts.size() == 1);
  CHECK(congruent(ts[0].target, P("0")));
}

TEST_CASE("output with extrusion") {
  auto ts = step(P("(nu b)(a<b(U).U>.0)"), StepQuery::out());
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].action.subject.id == "a");
  REQUIRE(ts[0].action.extruded.size() == 1);
  ProcPtr wrapped = Process::res(ts[0].action.extruded[0], ts[0].action.payload);
  CHECK(congruent(wrapped, P("(nu b)(b(U).U)")));
  CHECK(congruent(ts[0].target, P("0")));
}

TEST_CASE("input substitutes the payload") {
  auto ts = step(P("a(X).(X|X)"), StepQuery::in(Name{"a"}, P("c<0>.0")));
  REQUIRE(ts.size() == 1);
  CHECK(congruent(ts[0].target, P("c<0>.0 | c<0>.0")));
}

TEST_CASE("restricted channels are not observable") {
  CHECK(step(P("(nu a)(a<0>.0)"), StepQuery::out()).empty());
  CHECK(step(P("(nu a)(a(X).0)"), StepQuery::in(Name{"a"}, P("0"))).empty());
  // but the internal step under the restriction fires
  auto ts = step(P("(nu a)(a<0>.0 | a(X).X)"), StepQuery::tau());
  REQUIRE(ts.size() == 1);
  CHECK(congruent(ts[0].target, P("0")));
}

TEST_CASE("replication encoding unfolds to itself in parallel") {
  ProcPtr p = P("b.0");
  ProcPtr rp = replication_encode(p, Name{"a"});
  auto ts = step(rp, StepQuery::tau());
  REQUIRE(ts.size() == 1);
  CHECK(congruent(ts[0].target, Process::par(p, rp)));
}

TEST_CASE("engine agrees with the direct rule engine on random terms") {
  for (std::uint64_t seed = 0; seed < 150; seed++) {
    ProcPtr p = corpus::generate_process(seed * 3 + 1, 6);
    // tau successors up to congruence
    std::set<std::string> fast, slow;
    for (auto& t : step(p, StepQuery::tau())) fast.insert(canonical_key(t.target));
    for (auto& t : oracle::naive_taus(p)) slow.insert(canonical_key(t));
    CHECK(fast == slow);
    // outputs as (restricted payload, target) classes
    std::set<std::string> fastOut, slowOut;
    auto joint = [](const Name& subj, const std::vector<Name>& ext, const ProcPtr& pay,
                    const ProcPtr& tgt) {
      ProcPtr j = Process::output(subj, pay, tgt);
      for (auto it = ext.rbegin(); it != ext.rend(); ++it) j = Process::res(*it, j);
      return subj.id + "|" + std::to_string(ext.size()) + "|" + canonical_key(j);
    };
    for (auto& t : step(p, StepQuery::out()))
      fastOut.insert(joint(t.action.subject, t.action.extruded, t.action.payload, t.target));
    for (auto& o : oracle::naive_outs(p))
      slowOut.insert(joint(o.subj, o.extruded, o.payload, o.target));
    CHECK(fastOut == slowOut);
  }
}

TEST_CASE("transitions are stable under congruent sources") {
  for (std::uint64_t seed = 0; seed < 40; seed++) {
    ProcPtr p = corpus::generate_process(seed * 5 + 2, 5);
    for (auto& q : oracle::class_members(p, 2, term_size(p) + 4)) {
      std::set<std::string> a, b;
      for (auto& t : step(p, StepQuery::tau())) a.insert(canonical_key(t.target));
      for (auto& t : step(q, StepQuery::tau())) b.insert(canonical_key(t.target));
      CHECK(a == b);
    }
  }
}

TEST_CASE("input totality") {
  for (std::uint64_t seed = 0; seed < 60; seed++) {
    ProcPtr p = corpus::generate_process(seed * 9 + 4, 5);
    for (auto& subj : input_subjects(p)) {
      CHECK_FALSE(step(p, StepQuery::in(subj, P("c<0>.0"))).empty());
      CHECK_FALSE(step(p, StepQuery::in(subj, P("0"))).empty());
    }
  }
}

TEST_CASE("extruded names occur free in the payload") {
  for (std::uint64_t seed = 0; seed < 80; seed++) {
    ProcPtr p = corpus::generate_process(seed * 7 + 6, 6);
    for (auto& t : step(p, StepQuery::out())) {
      std::set<std::string> distinct;
      for (auto& e : t.action.extruded) {
        CHECK(has_free_name(t.action.payload, e));
        CHECK(distinct.insert(e.id).second);
      }
    }
  }
}

TEST_CASE("weak closure") {
  auto r0 = weak_reach(P("0"), 5);
  CHECK(r0.states.size() == 1);
  CHECK_FALSE(r0.truncated);

  auto r1 = weak_reach(P("a<0>.0 | a(X).X"), 1);
  CHECK(r1.states.size() == 2);
  CHECK_FALSE(r1.truncated);

  ProcPtr rp = replication_encode(P("b.0"), Name{"a"});
  auto r2 = weak_reach(rp, 3);
  CHECK(r2.states.size() >= 3);
  CHECK(r2.truncated);

  // monotone in fuel, and fuel 0 is the singleton class
  auto rz = weak_reach(rp, 0);
  CHECK(rz.states.size() == 1);
  auto r3 = weak_reach(rp, 4);
  CHECK(r3.states.size() >= r2.states.size());
}

TEST_CASE("barbs") {
  auto b1 = barbs(P("a<0>.0 | b(X).0"), false, 0);
  CHECK(b1 == std::set<std::string>{"'a", "b"});
  CHECK(barbs(P("0"), false, 0).empty());
  auto b2 = barbs(P("(nu a)(a<0>.0 | a(X).b<0>.0)"), true, 2);
  CHECK(b2 == std::set<std::string>{"'b"});
  // restricted names produce no barbs
  CHECK(barbs(P("(nu a)(a<0>.0)"), false, 0).empty());
}
