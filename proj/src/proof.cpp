#include "hopi/proof.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "hopi/formula_parse.hpp"

namespace hopi::proofs {

namespace {

// --- propositional oracle ----------------------------------------------

bool is_atom(const FormPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Not:
    case FKind::And:
    case FKind::Neq:
      return false;
    default:
      return true;
  }
}

void collect_atoms(const FormPtr& f, std::map<std::string, int>& atoms) {
  if (is_atom(f)) {
    atoms.emplace(formula_key(f), static_cast<int>(atoms.size()));
    return;
  }
  if (f->kind == FKind::Neq) return;  // constant-folded
  if (f->a) collect_atoms(f->a, atoms);
  if (f->b) collect_atoms(f->b, atoms);
}

bool eval_prop(const FormPtr& f, const std::map<std::string, int>& atoms,
               unsigned assignment) {
  switch (f->kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Neq: return !(f->name == f->name2);
    case FKind::Not: return !eval_prop(f->a, atoms, assignment);
    case FKind::And:
      return eval_prop(f->a, atoms, assignment) && eval_prop(f->b, atoms, assignment);
    default: {
      int idx = atoms.at(formula_key(f));
      return (assignment >> idx) & 1;
    }
  }
}

bool tautology_of(const std::vector<FormPtr>& hyps, const FormPtr& concl) {
  std::map<std::string, int> atoms;
  for (auto& h : hyps) collect_atoms(h, atoms);
  collect_atoms(concl, atoms);
  if (atoms.size() > 16) return false;
  unsigned n = static_cast<unsigned>(atoms.size());
  for (unsigned long long asg = 0; asg < (1ull << n); asg++) {
    bool hypsOk = true;
    for (auto& h : hyps) {
      if (!eval_prop(h, atoms, static_cast<unsigned>(asg))) { hypsOk = false; break; }
    }
    if (hypsOk && !eval_prop(concl, atoms, static_cast<unsigned>(asg))) return false;
  }
  return true;
}

std::set<std::string> atom_keys(const FormPtr& f) {
  std::map<std::string, int> atoms;
  collect_atoms(f, atoms);
  std::set<std::string> out;
  for (auto& [k, v] : atoms) out.insert(k);
  return out;
}

}  // namespace

int atom_count(const FormPtr& f) {
  std::map<std::string, int> atoms;
  collect_atoms(f, atoms);
  return static_cast<int>(atoms.size());
}

bool tautology(const FormPtr& f) {
  if (atom_count(f) > 16)
    throw std::invalid_argument("tautology: more than 16 distinct atoms");
  return tautology_of({}, f);
}

namespace {

// Finds a small subset of earlier steps that propositionally entails f.
// Candidates are steps sharing an atom with f (atom-disjoint hypotheses
// cannot help entail it unless they are contradictory, which honest proofs
// avoid). Returns the used indices or nullopt.
std::optional<std::vector<int>> find_taut_support(
    const std::vector<FormPtr>& earlier, const FormPtr& f) {
  if (atom_count(f) <= 16 && tautology_of({}, f)) return std::vector<int>{};
  // Two rounds of atom-sharing: hypotheses may connect to the conclusion
  // only through another hypothesis.
  auto fAtoms = atom_keys(f);
  std::vector<int> cands;
  std::set<int> used;
  for (int round = 0; round < 2 && cands.size() < 24; round++) {
    auto reach = fAtoms;
    for (int i : cands) {
      auto keys = atom_keys(earlier[i]);
      reach.insert(keys.begin(), keys.end());
    }
    for (int i = static_cast<int>(earlier.size()) - 1; i >= 0; i--) {
      if (used.count(i)) continue;
      auto keys = atom_keys(earlier[i]);
      bool shares = std::any_of(keys.begin(), keys.end(),
                                [&](const std::string& k) { return reach.count(k) > 0; });
      if (shares) {
        cands.push_back(i);
        used.insert(i);
        if (cands.size() >= 24) break;
      }
    }
  }
  for (int i : cands) {
    if (tautology_of({earlier[i]}, f)) return std::vector<int>{i};
  }
  for (size_t x = 0; x < cands.size(); x++) {
    for (size_t y = x + 1; y < cands.size(); y++) {
      if (tautology_of({earlier[cands[x]], earlier[cands[y]]}, f))
        return std::vector<int>{cands[x], cands[y]};
    }
  }
  for (size_t x = 0; x < cands.size(); x++) {
    for (size_t y = x + 1; y < cands.size(); y++) {
      for (size_t z = y + 1; z < cands.size(); z++) {
        if (tautology_of({earlier[cands[x]], earlier[cands[y]], earlier[cands[z]]}, f))
          return std::vector<int>{cands[x], cands[y], cands[z]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CheckResult check_proof(const Proof& pf) {
  const unsigned dialectBit = dialect_bit(pf.goal.dialect);
  std::vector<FormPtr> formulas;
  std::vector<bool> premiseFree;

  auto fail = [](int step, std::string reason) {
    return CheckResult{false, step, std::move(reason)};
  };

  for (size_t i = 0; i < pf.steps.size(); i++) {
    const Step& st = pf.steps[i];
    int stepNo = static_cast<int>(i) + 1;
    if (!st.formula) return fail(stepNo, "step has no formula");
    if (!in_dialect(st.formula, pf.goal.dialect))
      return fail(stepNo, "formula outside the proof dialect");
    bool pfree = true;
    switch (st.kind) {
      case Step::Premise: {
        if (st.cite1 < 1 || st.cite1 > static_cast<int>(pf.goal.premises.size()))
          return fail(stepNo, "premise index out of range");
        if (!formula_alpha_eq(st.formula, pf.goal.premises[st.cite1 - 1]))
          return fail(stepNo, "formula differs from the cited premise");
        pfree = false;
        break;
      }
      case Step::Axiom: {
        const AxiomSchema* schema = find_schema(st.id);
        if (!schema) return fail(stepNo, "unknown axiom: " + st.id);
        if (!(schema->dialects & dialectBit))
          return fail(stepNo, "axiom " + st.id + " unavailable in this dialect");
        FormPtr inst;
        try {
          inst = schema->build(st.bindings);
        } catch (const SideConditionError& e) {
          return fail(stepNo, e.what());
        }
        if (!formula_alpha_eq(inst, st.formula))
          return fail(stepNo, "formula is not the instance the bindings produce");
        break;
      }
      case Step::Taut: {
        auto support = find_taut_support(formulas, st.formula);
        if (!support)
          return fail(stepNo, "not a propositional consequence of earlier steps");
        for (int k : *support) pfree = pfree && premiseFree[k];
        break;
      }
      case Step::MP: {
        int a = st.cite1, b = st.cite2;
        if (a < 1 || a > static_cast<int>(i) || b < 1 || b > static_cast<int>(i))
          return fail(stepNo, "mp cites a later or missing step");
        FormPtr l, r;
        if (!is_implication(formulas[b - 1], l, r))
          return fail(stepNo, "second mp premise is not an implication");
        if (!formula_alpha_eq(l, formulas[a - 1]))
          return fail(stepNo, "mp premises do not match");
        if (!formula_alpha_eq(r, st.formula))
          return fail(stepNo, "mp conclusion mismatch");
        pfree = premiseFree[a - 1] && premiseFree[b - 1];
        break;
      }
      case Step::Rule: {
        const RuleSpec* rule = find_rule(st.id);
        if (!rule) return fail(stepNo, "unknown rule: " + st.id);
        if (!(rule->dialects & dialectBit))
          return fail(stepNo, "rule " + st.id + " unavailable in this dialect");
        if (static_cast<int>(st.cites.size()) != rule->premises)
          return fail(stepNo, "rule " + st.id + " expects " +
                                  std::to_string(rule->premises) + " premises");
        std::vector<FormPtr> prem;
        for (int c : st.cites) {
          if (c < 1 || c > static_cast<int>(i))
            return fail(stepNo, "rule cites a later or missing step");
          prem.push_back(formulas[c - 1]);
          pfree = pfree && premiseFree[c - 1];
        }
        std::string err = rule->check(prem, st.formula);
        if (!err.empty()) return fail(stepNo, "rule " + st.id + ": " + err);
        break;
      }
      case Step::MuInd: {
        if (!(dialectBit & kMuSL))
          return fail(stepNo, "fixpoint induction needs the fixpoint dialect");
        int a = st.cite1;
        if (a < 1 || a > static_cast<int>(i))
          return fail(stepNo, "muind cites a later or missing step");
        if (!premiseFree[a - 1])
          return fail(stepNo, "muind premise must be derived without sequent premises");
        FormPtr cl, cr;
        if (!is_implication(st.formula, cl, cr))
          return fail(stepNo, "muind conclusion is not an implication");
        if (cl->kind != FKind::Mu)
          return fail(stepNo, "muind conclusion lhs is not a fixpoint");
        FormPtr pl, pr;
        if (!is_implication(formulas[a - 1], pl, pr))
          return fail(stepNo, "muind premise is not an implication");
        if (!formula_alpha_eq(pr, cr))
          return fail(stepNo, "muind premise rhs differs from conclusion rhs");
        FormPtr expected = formula_subst(cl->a, cl->var, cr);
        if (!formula_alpha_eq(pl, expected))
          return fail(stepNo, "muind premise lhs is not the body instantiated at the rhs");
        break;
      }
    }
    formulas.push_back(st.formula);
    premiseFree.push_back(pfree);
  }
  if (formulas.empty()) return fail(0, "empty proof");
  if (!formula_alpha_eq(formulas.back(), pf.goal.conclusion))
    return fail(static_cast<int>(pf.steps.size()),
                "last step does not state the goal conclusion");
  return {true, 0, ""};
}

// --- script parsing / printing ------------------------------------------

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Splits on top-level commas (not inside (), [], <>).
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '<') depth++;
    if (c == ')' || c == ']' || c == '>') depth--;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(cur);
  return out;
}

ActionPattern parse_action(const std::string& text) {
  std::string t = trim(text);
  ActionPattern act;
  if (t == "tau") { act.kind = ActionPattern::Tau; return act; }
  if (t == "eps") { act.kind = ActionPattern::Eps; return act; }
  std::istringstream in(t);
  std::string kind, subj;
  in >> kind >> subj;
  std::string rest;
  std::getline(in, rest);
  if (kind == "in") act.kind = ActionPattern::DiaIn;
  else if (kind == "boxin") act.kind = ActionPattern::BoxIn;
  else if (kind == "out") act.kind = ActionPattern::DiaOut;
  else throw std::invalid_argument("bad action pattern: " + text);
  act.subject = Name{subj};
  act.payload = parse_formula(rest);
  return act;
}

std::string print_action(const ActionPattern& act) {
  switch (act.kind) {
    case ActionPattern::Tau: return "tau";
    case ActionPattern::Eps: return "eps";
    case ActionPattern::DiaIn: return "in " + act.subject.id + " " + print(act.payload);
    case ActionPattern::BoxIn: return "boxin " + act.subject.id + " " + print(act.payload);
    case ActionPattern::DiaOut: return "out " + act.subject.id + " " + print(act.payload);
  }
  return "tau";
}

Bindings parse_bindings(const AxiomSchema& schema, const std::string& text) {
  Bindings b;
  for (auto& partRaw : split_top(text, ',')) {
    std::string part = trim(partRaw);
    if (part.empty()) continue;
    auto pos = part.find(":=");
    if (pos == std::string::npos)
      throw std::invalid_argument("binding without ':=': " + part);
    std::string key = trim(part.substr(0, pos));
    std::string val = trim(part.substr(pos + 2));
    auto sortIt = schema.sorts.find(key);
    MetaSort sort = sortIt != schema.sorts.end() ? sortIt->second : MetaSort::Formula;
    switch (sort) {
      case MetaSort::Formula: b.formulas[key] = parse_formula(val); break;
      case MetaSort::NameSort: b.names[key] = Name{val}; break;
      case MetaSort::VarSort: b.vars[key] = ProcVar{val}; break;
      case MetaSort::NameList: {
        std::string inner = trim(val);
        if (inner.size() < 2 || inner.front() != '[' || inner.back() != ']')
          throw std::invalid_argument("name list must be [a,b,...]: " + val);
        inner = inner.substr(1, inner.size() - 2);
        std::vector<Name> ns;
        for (auto& n : split_top(inner, ','))
          if (!trim(n).empty()) ns.push_back(Name{trim(n)});
        b.nameLists[key] = ns;
        break;
      }
      case MetaSort::Action: b.action = parse_action(val); break;
    }
  }
  return b;
}

std::string print_bindings(const AxiomSchema& schema, const Bindings& b) {
  std::vector<std::string> parts;
  for (auto& [k, v] : b.formulas) parts.push_back(k + " := " + print(v));
  for (auto& [k, v] : b.names) parts.push_back(k + " := " + v.id);
  for (auto& [k, v] : b.vars) parts.push_back(k + " := " + v.id);
  for (auto& [k, v] : b.nameLists) {
    std::string s = k + " := [";
    for (size_t i = 0; i < v.size(); i++) s += (i ? "," : "") + v[i].id;
    parts.push_back(s + "]");
  }
  if (b.action) parts.push_back("alpha := " + print_action(*b.action));
  (void)schema;
  std::string out;
  for (size_t i = 0; i < parts.size(); i++) out += (i ? ", " : "") + parts[i];
  return out;
}

}  // namespace

Proof parse_proof(const std::string& text) {
  Proof pf;
  pf.goal.dialect = Dialect::SL;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  bool sawGoal = false;
  while (std::getline(in, line)) {
    lineNo++;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto err = [&](const std::string& msg) {
      throw ParseError("proof line " + std::to_string(lineNo) + ": " + msg, lineNo, 1);
    };
    if (t.rfind("dialect:", 0) == 0) {
      std::string d = trim(t.substr(8));
      if (d == "sl") pf.goal.dialect = Dialect::SL;
      else if (d == "wl") pf.goal.dialect = Dialect::WL;
      else if (d == "musl") pf.goal.dialect = Dialect::MuSL;
      else err("unknown dialect " + d);
      continue;
    }
    if (t.rfind("premise:", 0) == 0) {
      pf.goal.premises.push_back(parse_formula(trim(t.substr(8))));
      continue;
    }
    if (t.rfind("goal:", 0) == 0) {
      pf.goal.conclusion = parse_formula(trim(t.substr(5)));
      sawGoal = true;
      continue;
    }
    // "<i>: <formula> BY <just>"
    auto colon = t.find(':');
    if (colon == std::string::npos) err("expected '<step>: <formula> BY <justification>'");
    auto by = t.rfind(" BY ");
    if (by == std::string::npos || by < colon) err("missing 'BY' justification");
    std::string formulaText = trim(t.substr(colon + 1, by - colon - 1));
    std::string just = trim(t.substr(by + 4));
    Step st;
    st.formula = parse_formula(formulaText);
    auto paren = just.find('(');
    std::string head = paren == std::string::npos ? just : trim(just.substr(0, paren));
    std::string args;
    if (paren != std::string::npos) {
      auto close = just.rfind(')');
      if (close == std::string::npos || close < paren) err("unbalanced justification");
      args = just.substr(paren + 1, close - paren - 1);
    }
    if (head == "premise") {
      st.kind = Step::Premise;
      st.cite1 = std::stoi(args);
    } else if (head == "taut") {
      st.kind = Step::Taut;
    } else if (head == "mp") {
      st.kind = Step::MP;
      auto parts = split_top(args, ',');
      if (parts.size() != 2) err("mp needs two step numbers");
      st.cite1 = std::stoi(trim(parts[0]));
      st.cite2 = std::stoi(trim(parts[1]));
    } else if (head == "muind") {
      st.kind = Step::MuInd;
      st.cite1 = std::stoi(args);
    } else if (head == "axiom") {
      st.kind = Step::Axiom;
      auto semi = args.find(';');
      st.id = trim(semi == std::string::npos ? args : args.substr(0, semi));
      const AxiomSchema* schema = find_schema(st.id);
      if (!schema) err("unknown axiom " + st.id);
      if (semi != std::string::npos)
        st.bindings = parse_bindings(*schema, args.substr(semi + 1));
    } else if (head == "rule") {
      st.kind = Step::Rule;
      auto semi = args.find(';');
      if (semi == std::string::npos) err("rule needs premise step numbers");
      st.id = trim(args.substr(0, semi));
      for (auto& c : split_top(args.substr(semi + 1), ','))
        st.cites.push_back(std::stoi(trim(c)));
    } else {
      err("unknown justification '" + head + "'");
    }
    pf.steps.push_back(std::move(st));
  }
  if (!sawGoal) throw ParseError("proof script has no goal line", lineNo, 1);
  return pf;
}

std::string print_proof(const Proof& pf) {
  std::ostringstream out;
  switch (pf.goal.dialect) {
    case Dialect::SL: out << "dialect: sl\n"; break;
    case Dialect::WL: out << "dialect: wl\n"; break;
    case Dialect::MuSL: out << "dialect: musl\n"; break;
  }
  for (auto& p : pf.goal.premises) out << "premise: " << print(p) << "\n";
  out << "goal: " << print(pf.goal.conclusion) << "\n";
  for (size_t i = 0; i < pf.steps.size(); i++) {
    const Step& st = pf.steps[i];
    out << (i + 1) << ": " << print(st.formula) << " BY ";
    switch (st.kind) {
      case Step::Premise: out << "premise(" << st.cite1 << ")"; break;
      case Step::Taut: out << "taut"; break;
      case Step::MP: out << "mp(" << st.cite1 << "," << st.cite2 << ")"; break;
      case Step::MuInd: out << "muind(" << st.cite1 << ")"; break;
      case Step::Axiom: {
        const AxiomSchema* schema = find_schema(st.id);
        std::string bs = schema ? print_bindings(*schema, st.bindings) : "";
        out << "axiom(" << st.id;
        if (!bs.empty()) out << "; " << bs;
        out << ")";
        break;
      }
      case Step::Rule: {
        out << "rule(" << st.id << "; ";
        for (size_t c = 0; c < st.cites.size(); c++)
          out << (c ? "," : "") << st.cites[c];
        out << ")";
        break;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace hopi::proofs
