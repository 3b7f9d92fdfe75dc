#include "support/enumerate.hpp"

#include <map>
#include <set>

#include "hopi/translate.hpp"

namespace testgen {

using hopi::FKind;
using hopi::Formula;
using hopi::PKind;
using hopi::Process;
using hopi::ProcVar;

namespace {

// Open terms with free variables among B0..B(depth-1).
struct ProcEnum {
  std::vector<Name> names;
  // memo[(size, depth)]
  std::map<std::pair<int, int>, std::vector<ProcPtr>> memo;

  static ProcVar bvar(int i) { return ProcVar{"B" + std::to_string(i)}; }

  const std::vector<ProcPtr>& gen(int size, int depth) {
    auto key = std::make_pair(size, depth);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<ProcPtr> out;
    if (size == 1) {
      out.push_back(Process::nil());
      for (int i = 0; i < depth; i++) out.push_back(Process::mkvar(bvar(i)));
    } else if (size >= 2) {
      for (auto& n : names) {
        for (auto& body : gen(size - 1, depth + 1))
          out.push_back(Process::input(n, bvar(depth), body));
        for (auto& body : gen(size - 1, depth))
          out.push_back(Process::res(n, body));
      }
      for (int se = 1; se <= size - 2; se++) {
        int sk = size - 1 - se;
        for (auto& n : names)
          for (auto& e : gen(se, depth))
            for (auto& k : gen(sk, depth)) out.push_back(Process::output(n, e, k));
        for (auto& l : gen(se, depth))
          for (auto& r : gen(sk, depth)) out.push_back(Process::par(l, r));
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  }
};

}  // namespace

std::vector<ProcPtr> all_closed_processes(const std::vector<Name>& names, int maxSize) {
  ProcEnum en;
  en.names = names;
  std::vector<ProcPtr> out;
  std::set<std::string> seen;
  for (int size = 1; size <= maxSize; size++) {
    for (auto& t : en.gen(size, 0)) {
      auto key = hopi::alpha_key(t);
      if (seen.insert(key).second) out.push_back(t);
    }
  }
  return out;
}

namespace {

struct FormEnum {
  std::vector<Name> names;
  std::vector<std::pair<int, FormPtr>> procAtoms;  // embedded processes by size
  std::map<int, std::vector<FormPtr>> memo;

  const std::vector<FormPtr>& gen(int size) {
    auto it = memo.find(size);
    if (it != memo.end()) return it->second;
    std::vector<FormPtr> out;
    if (size == 1) {
      out.push_back(Formula::truth());
      out.push_back(Formula::falsity());
      out.push_back(Formula::zero());
      out.push_back(Formula::propvar(ProcVar{"X"}));
      for (auto& a : names)
        for (auto& b : names) out.push_back(Formula::neq(a, b));
    }
    if (size >= 2) {
      for (auto& sub : gen(size - 1)) {
        out.push_back(Formula::lnot(sub));
        out.push_back(Formula::dia_tau(sub));
        out.push_back(Formula::no_bound(sub));
        for (auto& a : names) {
          out.push_back(Formula::not_free(a, sub));
          out.push_back(Formula::reveal(a, sub));
          out.push_back(Formula::hide(sub, a));
          out.push_back(Formula::fresh_name(Name{"x"}, sub));
          out.push_back(Formula::in_prefix(a, ProcVar{"X"}, sub));
          out.push_back(Formula::out_adjoint(sub, a));
          out.push_back(Formula::in_adjoint(sub, a, ProcVar{"X"}));
        }
        out.push_back(Formula::fresh_var(ProcVar{"X"}, sub));
      }
      for (int ls = 1; ls <= size - 2; ls++) {
        int rs = size - 1 - ls;
        for (auto& l : gen(ls)) {
          for (auto& r : gen(rs)) {
            out.push_back(Formula::land(l, r));
            out.push_back(Formula::par(l, r));
          }
        }
        for (auto& a : names)
          for (auto& l : gen(ls))
            for (auto& r : gen(rs)) out.push_back(Formula::out_prefix(a, l, r));
      }
      // modal/guarantee forms with process-shaped arguments
      for (auto& [psize, patom] : procAtoms) {
        int rest = size - 1 - psize;
        if (rest < 1) continue;
        for (auto& cont : gen(rest)) {
          for (auto& a : names) {
            out.push_back(Formula::dia_in(a, patom, cont));
            out.push_back(Formula::box_in(a, patom, cont));
            out.push_back(Formula::dia_out(a, patom, cont));
          }
          out.push_back(Formula::guarantee(patom, cont));
        }
      }
    }
    return memo.emplace(size, std::move(out)).first->second;
  }
};

}  // namespace

std::vector<FormPtr> all_exact_formulas(const std::vector<Name>& names, int maxSize) {
  FormEnum en;
  en.names = names;
  for (auto& t : all_closed_processes(names, std::max(1, maxSize - 2)))
    en.procAtoms.push_back({hopi::term_size(t), hopi::embed_process(t)});
  std::vector<FormPtr> out;
  std::set<std::string> seen;
  for (int size = 1; size <= maxSize; size++) {
    for (auto& f : en.gen(size)) {
      auto key = hopi::formula_key(f);
      if (seen.insert(key).second) out.push_back(f);
    }
  }
  return out;
}

}  // namespace testgen
