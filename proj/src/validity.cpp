#include "hopi/validity.hpp"

#include <random>

#include "hopi/canonical.hpp"
#include "hopi/corpus.hpp"
#include "hopi/translate.hpp"

namespace hopi::proofs {

namespace {

using hopi::Checker;
using hopi::Outcome;
using hopi::Verdict;
using hopi::corpus::generate_formula;
using hopi::corpus::generate_process;

Dialect schema_dialect(const AxiomSchema& s) {
  if (s.dialects & kSL) return Dialect::SL;
  if (s.dialects & kWL) return Dialect::WL;
  return Dialect::MuSL;
}

void collect_process_shaped(const FormPtr& f, std::vector<ProcPtr>& out) {
  if (!f) return;
  if (auto p = as_process(f)) {
    if (hopi::is_closed(*p)) out.push_back(*p);
    return;
  }
  collect_process_shaped(f->a, out);
  collect_process_shaped(f->b, out);
}

struct Sampler {
  std::mt19937_64 eng;
  Dialect dialect;

  explicit Sampler(std::uint64_t seed, Dialect d) : eng(seed), dialect(d) {}

  std::uint64_t next() { return eng(); }
  int pick(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  Name name() {
    static const char* ns[] = {"a", "b", "c"};
    return Name{ns[pick(3)]};
  }
  ProcVar var() {
    static const char* vs[] = {"X", "Y", "Z", "U"};
    return ProcVar{vs[pick(4)]};
  }
  FormPtr formula() {
    // Bias toward process shapes so the shape-conditioned schemas get
    // exercised and the checker can certify more instances.
    if (pick(2) == 0) {
      ProcPtr t = generate_process(next(), 1 + pick(4));
      if (hopi::restriction_free(t)) return embed_process(t);
      return embed_process(t);
    }
    return generate_formula(next(), dialect, 1 + pick(4));
  }
  Bindings bindings(const AxiomSchema& s) {
    Bindings b;
    for (auto& [key, sort] : s.sorts) {
      switch (sort) {
        case MetaSort::Formula: b.formulas[key] = formula(); break;
        case MetaSort::NameSort: b.names[key] = name(); break;
        case MetaSort::VarSort: b.vars[key] = var(); break;
        case MetaSort::NameList: {
          int len = pick(3);
          std::vector<Name> ns;
          static const char* cands[] = {"m", "n"};
          for (int i = 0; i < len; i++) ns.push_back(Name{cands[i]});
          b.nameLists[key] = ns;
          break;
        }
        case MetaSort::Action: {
          ActionPattern act;
          switch (pick(4)) {
            case 0:
              act.kind = dialect == Dialect::WL ? ActionPattern::Eps : ActionPattern::Tau;
              break;
            case 1:
              act.kind = ActionPattern::DiaIn;
              act.subject = name();
              act.payload = formula();
              break;
            case 2:
              act.kind = ActionPattern::BoxIn;
              act.subject = name();
              act.payload = formula();
              break;
            default:
              act.kind = ActionPattern::DiaOut;
              act.subject = name();
              act.payload = formula();
              break;
          }
          b.action = act;
          break;
        }
      }
    }
    return b;
  }
};

}  // namespace

ValidityReport validity_sample(const std::string& schemaId, int trials, const Budget& b,
                               std::uint64_t seed) {
  const AxiomSchema* schema = find_schema(schemaId);
  if (!schema) throw std::invalid_argument("unknown axiom schema: " + schemaId);
  ValidityReport rep;
  rep.schema = schemaId;
  rep.sampled = schema->sampled;
  if (!schema->sampled) return rep;

  Dialect d = schema_dialect(*schema);
  Sampler smp(seed ^ std::hash<std::string>{}(schemaId), d);
  Checker checker(b);

  int attempts = 0;
  while (rep.instances < trials && attempts < trials * 20) {
    attempts++;
    FormPtr inst;
    try {
      inst = schema->build(smp.bindings(*schema));
    } catch (const SideConditionError&) {
      continue;
    }
    if (!dialect_of(inst)) continue;  // mixed metavariables; resample
    rep.instances++;

    std::vector<ProcPtr> subjects;
    subjects.push_back(Process::nil());
    collect_process_shaped(inst, subjects);
    for (int k = 0; k < 3; k++)
      subjects.push_back(generate_process(smp.next(), 2 + smp.pick(4)));
    std::set<std::string> seen;
    for (auto& p : subjects) {
      if (!seen.insert(canonical_key(p)).second) continue;
      Verdict v = checker.check(p, inst);
      rep.checks++;
      switch (v.outcome) {
        case Outcome::Holds: rep.holds++; break;
        case Outcome::Unknown: rep.unknown++; break;
        case Outcome::Fails:
          rep.fails++;
          if (rep.counterexample.empty())
            rep.counterexample = print(p) + "  |/=  " + print(inst);
          break;
      }
    }
  }
  return rep;
}

std::vector<ValidityReport> validity_sample_all(int trials, const Budget& b,
                                                std::uint64_t seed) {
  std::vector<ValidityReport> out;
  for (auto& s : axiom_catalogue())
    out.push_back(validity_sample(s.id, trials, b, seed));
  return out;
}

}  // namespace hopi::proofs
