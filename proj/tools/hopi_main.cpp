// Batch front end. Exit codes: 0 success / holds / accepted / no
// distinction; 1 fails / rejected / distinguished; 2 unknown; 3 input
// error; 4 internal error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hopi/canonical.hpp"
#include "hopi/checker.hpp"
#include "hopi/corpus.hpp"
#include "hopi/equiv.hpp"
#include "hopi/formula_parse.hpp"
#include "hopi/json_io.hpp"
#include "hopi/lts.hpp"
#include "hopi/parse.hpp"
#include "hopi/proof.hpp"
#include "hopi/prove.hpp"
#include "hopi/translate.hpp"
#include "hopi/validity.hpp"

using namespace hopi;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kNegative = 1, kUnknown = 2, kInputError = 3, kInternal = 4;

std::string load_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::runtime_error("cannot open file: " + arg.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

Budget parse_budget(const std::string& spec) {
  Budget b;
  if (spec.empty()) return b;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("budget entries look like key=value: " + item);
    std::string key = item.substr(0, eq);
    int val = std::stoi(item.substr(eq + 1));
    if (key == "payload_depth") b.payload_depth = val;
    else if (key == "pool_size") b.pool_size = val;
    else if (key == "tau_fuel") b.tau_fuel = val;
    else if (key == "mu_fuel") b.mu_fuel = val;
    else throw std::runtime_error("unknown budget key: " + key);
  }
  return b;
}

int verdict_exit(const Verdict& v) {
  switch (v.outcome) {
    case Outcome::Holds: return kOk;
    case Outcome::Fails: return kNegative;
    case Outcome::Unknown: return kUnknown;
  }
  return kInternal;
}

struct Options {
  std::string process, formula, second;
  std::string budgetSpec;
  std::string dialect = "";
  bool jsonOut = false;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("-p,--process", opt.process, "process term (or @file)");
  cmd->add_option("-f,--formula", opt.formula, "formula (or @file)");
  cmd->add_option("-q,--second", opt.second, "second process term (or @file)");
  cmd->add_option("--budget", opt.budgetSpec, "budget overrides k=v,... "
                  "(payload_depth=3,pool_size=64,tau_fuel=8,mu_fuel=8)");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--dialect", opt.dialect, "sl|wl|musl");
  cmd->add_flag("--json", opt.jsonOut, "machine-readable output");
}

ProcPtr need_process(const Options& opt) {
  if (opt.process.empty()) throw std::runtime_error("missing -p/--process");
  return parse_process(load_arg(opt.process));
}
ProcPtr need_second(const Options& opt) {
  if (opt.second.empty()) throw std::runtime_error("missing -q/--second");
  return parse_process(load_arg(opt.second));
}
FormPtr need_formula(const Options& opt) {
  if (opt.formula.empty()) throw std::runtime_error("missing -f/--formula");
  return parse_formula(load_arg(opt.formula));
}

void check_dialect(const Options& opt, const FormPtr& f) {
  if (opt.dialect.empty()) {
    if (!dialect_of(f))
      throw std::runtime_error("formula mixes weak and strong/fixpoint constructs");
    return;
  }
  Dialect d;
  if (opt.dialect == "sl") d = Dialect::SL;
  else if (opt.dialect == "wl") d = Dialect::WL;
  else if (opt.dialect == "musl") d = Dialect::MuSL;
  else throw std::runtime_error("unknown dialect: " + opt.dialect);
  if (!in_dialect(f, d))
    throw std::runtime_error("formula is not in the requested dialect");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for higher-order process terms and spatial logics"};
  app.require_subcommand(1);

  Options opt;
  std::string proofFile;
  std::string translateKind, proveKind, equivKind, equivStrength = "strong";
  std::string stepKind = "tau", stepSubject, stepPayload;
  std::string schemaId = "all";
  int fuel = 8, sizeBound = 6, trials = 50, phiMax = 6;

  auto* cNormalize = app.add_subcommand("normalize", "canonical form of a process");
  add_common(cNormalize, opt);

  auto* cCongruent = app.add_subcommand("congruent", "structural congruence of -p and -q");
  add_common(cCongruent, opt);

  auto* cStep = app.add_subcommand("step", "one-step transitions");
  add_common(cStep, opt);
  cStep->add_option("--kind", stepKind, "tau|out|in");
  cStep->add_option("--subject", stepSubject, "input subject (kind=in)");
  cStep->add_option("--payload", stepPayload, "input payload (kind=in)");

  auto* cReach = app.add_subcommand("reach", "bounded internal-step closure");
  add_common(cReach, opt);
  cReach->add_option("--fuel", fuel, "max tau steps");

  auto* cBarbs = app.add_subcommand("barbs", "observables");
  add_common(cBarbs, opt);
  cBarbs->add_option("--fuel", fuel, "closure depth for weak barbs");
  bool weakFlag = false;
  cBarbs->add_flag("--weak", weakFlag, "weak barbs");

  auto* cCheck = app.add_subcommand("check", "does -p satisfy -f");
  add_common(cCheck, opt);

  auto* cTranslate = app.add_subcommand("translate", "tps|twm|bang");
  add_common(cTranslate, opt);
  cTranslate->add_option("what", translateKind, "tps|twm|bang")->required();

  auto* cProve = app.add_subcommand("prove", "generate a checkable proof");
  add_common(cProve, opt);
  cProve->add_option("what", proveKind, "congruence|transition")->required();
  cProve->add_option("--kind", stepKind, "transition kind: tau|out|in");
  cProve->add_option("--subject", stepSubject, "subject for out/in");
  cProve->add_option("--payload", stepPayload, "payload for in");
  bool proveWeak = false;
  cProve->add_flag("--weak", proveWeak, "weak transition");

  auto* cVerify = app.add_subcommand("verify-proof", "check a proof script");
  add_common(cVerify, opt);
  cVerify->add_option("file", proofFile, "proof script path")->required();

  auto* cEquiv = app.add_subcommand("equiv", "behavioral comparison");
  add_common(cEquiv, opt);
  cEquiv->add_option("--logic", equivKind, "L|context|barbed")->required();
  cEquiv->add_option("--strength", equivStrength, "strong|weak");
  cEquiv->add_option("--size-bound", sizeBound, "formula size bound for L");

  auto* cValidity = app.add_subcommand("validity-sample", "axiom soundness sampling");
  add_common(cValidity, opt);
  cValidity->add_option("--schema", schemaId, "schema id or 'all'");
  cValidity->add_option("--trials", trials, "instances per schema");

  auto* cPhi = app.add_subcommand("phi-demo", "output-chain family demonstration");
  add_common(cPhi, opt);
  cPhi->add_option("--max", phiMax, "family depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Budget budget = parse_budget(opt.budgetSpec);

    if (cNormalize->parsed()) {
      ProcPtr p = need_process(opt);
      auto canon = normalize(p);
      if (opt.jsonOut) {
        json j{{"input", print(p)}, {"canonical", print(canon.term)},
               {"certified", canon.certified}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << print(canon.term) << "\n";
      }
      return kOk;
    }

    if (cCongruent->parsed()) {
      ProcPtr p = need_process(opt), q = need_second(opt);
      bool eq = congruent(p, q);
      if (opt.jsonOut) {
        json j{{"congruent", eq}, {"canonical", print(canonical(p))}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << (eq ? "congruent" : "not congruent") << "\n";
      }
      return eq ? kOk : kNegative;
    }

    if (cStep->parsed()) {
      ProcPtr p = need_process(opt);
      StepQuery q;
      if (stepKind == "tau") q = StepQuery::tau();
      else if (stepKind == "out") q = StepQuery::out();
      else if (stepKind == "in") {
        if (stepSubject.empty() || stepPayload.empty())
          throw std::runtime_error("kind=in needs --subject and --payload");
        q = StepQuery::in(Name{stepSubject}, parse_process(load_arg(stepPayload)));
      } else {
        throw std::runtime_error("unknown step kind: " + stepKind);
      }
      auto ts = step(p, q);
      if (opt.jsonOut) {
        json arr = json::array();
        for (auto& t : ts) arr.push_back(to_json(t));
        std::cout << arr.dump(2) << "\n";
      } else {
        for (auto& t : ts)
          std::cout << print(t.action) << "  ->  " << print(t.target) << "\n";
        if (ts.empty()) std::cout << "(no transitions)\n";
      }
      return kOk;
    }

    if (cReach->parsed()) {
      ProcPtr p = need_process(opt);
      auto r = weak_reach(p, fuel);
      if (opt.jsonOut) {
        json arr = json::array();
        for (auto& s : r.states) arr.push_back(print(s));
        json j{{"states", arr}, {"truncated", r.truncated}};
        std::cout << j.dump(2) << "\n";
      } else {
        for (auto& s : r.states) std::cout << print(s) << "\n";
        if (r.truncated) std::cout << "(truncated)\n";
      }
      return kOk;
    }

    if (cBarbs->parsed()) {
      ProcPtr p = need_process(opt);
      auto bs = barbs(p, weakFlag, fuel);
      if (opt.jsonOut) {
        json arr = json::array();
        for (auto& b : bs) arr.push_back(b);
        std::cout << arr.dump(2) << "\n";
      } else {
        for (auto& b : bs) std::cout << b << "\n";
      }
      return kOk;
    }

    if (cCheck->parsed()) {
      ProcPtr p = need_process(opt);
      FormPtr f = need_formula(opt);
      check_dialect(opt, f);
      Verdict v = check(p, f, budget);
      if (opt.jsonOut) {
        std::cout << to_json(v, budget).dump(2) << "\n";
      } else {
        switch (v.outcome) {
          case Outcome::Holds: std::cout << "holds"; break;
          case Outcome::Fails: std::cout << "fails"; break;
          case Outcome::Unknown: std::cout << "unknown (budget exhausted)"; break;
        }
        if (!v.witness.empty()) std::cout << "  [witness: " << v.witness << "]";
        std::cout << "\n";
      }
      return verdict_exit(v);
    }

    if (cTranslate->parsed()) {
      FormPtr out;
      if (translateKind == "tps") {
        out = translate_tps(need_process(opt));
      } else if (translateKind == "twm") {
        out = translate_twm(need_formula(opt));
      } else if (translateKind == "bang") {
        out = bang(need_formula(opt));
      } else {
        throw std::runtime_error("translate expects tps, twm or bang");
      }
      if (opt.jsonOut) {
        json j{{"formula", print(out)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << print(out) << "\n";
      }
      return kOk;
    }

    if (cProve->parsed()) {
      proofs::Proof pf;
      if (proveKind == "congruence") {
        pf = proofs::prove_congruence(need_process(opt), need_second(opt));
      } else if (proveKind == "transition") {
        ProcPtr p = need_process(opt), q = need_second(opt);
        Action act;
        if (stepKind == "tau") {
          act = Action::tau();
        } else if (stepKind == "in") {
          act = Action::in(Name{stepSubject}, parse_process(load_arg(stepPayload)));
        } else if (stepKind == "out") {
          // locate the matching output action on p
          bool found = false;
          for (auto& t : step(p, StepQuery::out())) {
            if (!(t.action.subject == Name{stepSubject})) continue;
            if (!congruent(t.target, q)) continue;
            act = t.action;
            found = true;
            break;
          }
          if (!found) throw std::runtime_error("no matching output transition");
        } else {
          throw std::runtime_error("unknown transition kind: " + stepKind);
        }
        pf = proofs::prove_transition(p, act, q, proveWeak);
      } else {
        throw std::runtime_error("prove expects congruence or transition");
      }
      auto res = proofs::check_proof(pf);
      if (opt.jsonOut) {
        json j{{"accepted", res.ok}, {"steps", pf.steps.size()},
               {"script", proofs::print_proof(pf)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << proofs::print_proof(pf);
        std::cout << (res.ok ? "# accepted" : "# REJECTED: " + res.reason) << "\n";
      }
      return res.ok ? kOk : kNegative;
    }

    if (cVerify->parsed()) {
      std::ifstream in(proofFile);
      if (!in) throw std::runtime_error("cannot open proof script: " + proofFile);
      std::ostringstream ss;
      ss << in.rdbuf();
      auto pf = proofs::parse_proof(ss.str());
      auto res = proofs::check_proof(pf);
      if (opt.jsonOut) {
        json j{{"accepted", res.ok}};
        if (!res.ok) {
          j["failed_step"] = res.failed_step;
          j["reason"] = res.reason;
        }
        std::cout << j.dump(2) << "\n";
      } else if (res.ok) {
        std::cout << "accepted (" << pf.steps.size() << " steps)\n";
      } else {
        std::cout << "rejected at step " << res.failed_step << ": " << res.reason << "\n";
      }
      return res.ok ? kOk : kNegative;
    }

    if (cEquiv->parsed()) {
      ProcPtr p = need_process(opt), q = need_second(opt);
      equiv::EquivReport rep;
      if (equivKind == "L") {
        rep = equiv::distinguish_L(p, q, sizeBound, budget);
      } else {
        auto kind = equivKind == "context" ? equiv::GameKind::Context
                                           : equiv::GameKind::Barbed;
        if (equivKind != "context" && equivKind != "barbed")
          throw std::runtime_error("equiv --logic expects L, context or barbed");
        auto strength = equivStrength == "weak" ? equiv::Strength::Weak
                                                : equiv::Strength::Strong;
        rep = equiv::bisim_bounded(p, q, kind, strength, budget);
      }
      if (opt.jsonOut) {
        std::cout << to_json(rep).dump(2) << "\n";
      } else if (rep.distinguished) {
        std::cout << "distinguished";
        if (rep.witness) std::cout << " by " << print(*rep.witness);
        std::cout << "\n";
        for (auto& m : rep.trace) std::cout << "  " << m << "\n";
      } else {
        std::cout << "no distinction found within bounds (" << rep.bounds << ")\n";
      }
      return rep.distinguished ? kNegative : kOk;
    }

    if (cValidity->parsed()) {
      std::vector<proofs::ValidityReport> reports;
      if (schemaId == "all") {
        reports = proofs::validity_sample_all(trials, budget, opt.seed);
      } else {
        reports.push_back(proofs::validity_sample(schemaId, trials, budget, opt.seed));
      }
      int fails = 0;
      json arr = json::array();
      for (auto& r : reports) {
        fails += r.fails;
        if (opt.jsonOut) {
          json j{{"schema", r.schema}, {"sampled", r.sampled},
                 {"instances", r.instances}, {"checks", r.checks},
                 {"holds", r.holds}, {"unknown", r.unknown}, {"fails", r.fails}};
          if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
          arr.push_back(j);
        } else {
          std::cout << r.schema << ": ";
          if (!r.sampled) {
            std::cout << "excluded from sampling\n";
            continue;
          }
          std::cout << r.instances << " instances, " << r.holds << " holds, "
                    << r.unknown << " unknown, " << r.fails << " fails";
          if (!r.counterexample.empty()) std::cout << "  !! " << r.counterexample;
          std::cout << "\n";
        }
      }
      if (opt.jsonOut) std::cout << arr.dump(2) << "\n";
      return fails == 0 ? kOk : kNegative;
    }

    if (cPhi->parsed()) {
      Budget b = parse_budget(opt.budgetSpec);
      json arr = json::array();
      bool allOk = true;
      for (int n = 1; n <= phiMax; n++) {
        auto inst = corpus::phi_family(n);
        auto next = corpus::phi_family(n + 1);
        Verdict self = check(inst.witness, inst.formula, b);
        Verdict above = check(inst.witness, next.formula, b);
        bool ok = self.outcome == Outcome::Holds && above.outcome == Outcome::Fails;
        allOk = allOk && ok;
        if (opt.jsonOut) {
          arr.push_back(json{{"n", n},
                             {"witness", print(inst.witness)},
                             {"satisfies_own", self.outcome == Outcome::Holds},
                             {"fails_next", above.outcome == Outcome::Fails}});
        } else {
          std::cout << "n=" << n << "  witness " << print(inst.witness) << "  own:"
                    << (self.outcome == Outcome::Holds ? "holds" : "!")
                    << "  next:" << (above.outcome == Outcome::Fails ? "fails" : "!")
                    << "\n";
        }
      }
      if (opt.jsonOut) std::cout << arr.dump(2) << "\n";
      return allOk ? kOk : kNegative;
    }

    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line << ", column " << e.col << ": "
              << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
