#include "hopi/corpus.hpp"

#include <random>
#include <stdexcept>

#include "hopi/translate.hpp"

namespace hopi::corpus {

using F = hopi::Formula;
using hopi::FKind;
using hopi::Name;
using hopi::Process;
using hopi::ProcVar;

PhiInstance phi_family(int n) {
  if (n < 1) throw std::invalid_argument("phi_family: index must be positive");
  Name a{"a"}, b{"b"};
  auto chain = [&](int k) {  // k inputs at b over 0
    ProcPtr t = Process::nil();
    for (int i = 0; i < k; i++)
      t = Process::input(b, hopi::kUnusedBinder, t);
    return t;
  };
  FormPtr f = F::truth();
  ProcPtr w = Process::nil();
  for (int i = n; i >= 1; i--) {
    f = F::out_prefix(a, embed_process(chain(i - 1)), f);
    w = Process::output(a, chain(i - 1), w);
  }
  return {n, f, w};
}

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int pick(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  bool coin() { return pick(2) == 0; }
};

const char* kNames[] = {"a", "b", "c", "d"};

Name rand_name(Rng& r) { return Name{kNames[r.pick(4)]}; }

ProcPtr gen_proc(Rng& r, int size, std::vector<ProcVar>& bound) {
  if (size <= 1) {
    if (!bound.empty() && r.pick(3) == 0)
      return Process::mkvar(bound[r.pick(static_cast<int>(bound.size()))]);
    return Process::nil();
  }
  int roll = r.pick(8);
  if (size < 3 && (roll == 2 || roll == 3 || roll == 4 || roll == 5)) roll = 0;
  switch (roll) {
    case 0:
    case 1: {  // input
      ProcVar x{"X" + std::to_string(bound.size())};
      bound.push_back(x);
      ProcPtr body = gen_proc(r, size - 1, bound);
      bound.pop_back();
      return Process::input(rand_name(r), x, body);
    }
    case 2:
    case 3: {  // output
      int se = 1 + r.pick(std::max(1, size - 2));
      int sk = std::max(1, size - 1 - se);
      ProcPtr e = gen_proc(r, se, bound);
      ProcPtr k = gen_proc(r, sk, bound);
      return Process::output(rand_name(r), e, k);
    }
    case 4:
    case 5: {  // parallel
      int sl = 1 + r.pick(std::max(1, size - 2));
      int sr = std::max(1, size - 1 - sl);
      return Process::par(gen_proc(r, sl, bound), gen_proc(r, sr, bound));
    }
    case 6: {  // restriction
      return Process::res(rand_name(r), gen_proc(r, size - 1, bound));
    }
    default: {  // bare-prefix style input that drops its payload
      ProcVar x{"X" + std::to_string(bound.size())};
      return Process::input(rand_name(r), x, gen_proc(r, size - 1, bound));
    }
  }
}

FormPtr gen_formula(Rng& r, Dialect d, int size, std::vector<ProcVar>& mus) {
  if (size <= 1) {
    switch (r.pick(5)) {
      case 0: return F::truth();
      case 1: return F::zero();
      case 2: {
        Name a = rand_name(r), b = rand_name(r);
        return F::neq(a, b);
      }
      case 3:
        if (!mus.empty()) return F::propvar(mus[r.pick(static_cast<int>(mus.size()))]);
        return F::truth();
      default: return F::falsity();
    }
  }
  // embedded process as a payload-friendly atom
  if (r.pick(6) == 0) {
    std::vector<ProcVar> bound;
    ProcPtr t = gen_proc(r, size, bound);
    if (hopi::restriction_free(t) && hopi::is_closed(t)) return embed_process(t);
  }
  int roll = r.pick(14);
  auto sub = [&](int s) { return gen_formula(r, d, s, mus); };
  int half = std::max(1, (size - 1) / 2);
  switch (roll) {
    case 0: return F::lnot(sub(size - 1));
    case 1: return F::land(sub(half), sub(std::max(1, size - 1 - half)));
    case 2: return F::lor(sub(half), sub(std::max(1, size - 1 - half)));
    case 3: {
      if (d == Dialect::WL) return F::weak_eps(sub(size - 1));
      return F::dia_tau(sub(size - 1));
    }
    case 4: {
      Name a = rand_name(r);
      FormPtr pay = sub(half);
      FormPtr cont = sub(std::max(1, size - 1 - half));
      if (d == Dialect::WL) return F::weak_in(a, pay, cont);
      return F::dia_in(a, pay, cont);
    }
    case 5: {
      Name a = rand_name(r);
      FormPtr pay = sub(half);
      FormPtr cont = sub(std::max(1, size - 1 - half));
      if (d == Dialect::WL) return F::weak_out(a, pay, cont);
      return F::dia_out(a, pay, cont);
    }
    case 6: {
      Name a = rand_name(r);
      FormPtr pay = sub(half);
      FormPtr cont = sub(std::max(1, size - 1 - half));
      if (d == Dialect::WL) return F::weak_box_in(a, pay, cont);
      return F::box_in(a, pay, cont);
    }
    case 7: return F::par(sub(half), sub(std::max(1, size - 1 - half)));
    case 8: return F::guarantee(sub(half), sub(std::max(1, size - 1 - half)));
    case 9: {
      Name a = rand_name(r);
      return r.coin() ? F::reveal(a, sub(size - 1)) : F::hide(sub(size - 1), a);
    }
    case 10: {
      Name a = rand_name(r);
      return r.coin() ? F::not_free(a, sub(size - 1)) : F::no_bound(sub(size - 1));
    }
    case 11: {
      if (d == Dialect::MuSL && size >= 3) {
        ProcVar x{"M" + std::to_string(mus.size())};
        mus.push_back(x);
        FormPtr body = sub(size - 1);
        mus.pop_back();
        if (positive_in(body, x)) return F::mu(x, body);
      }
      return F::dia_tau(sub(size - 1));
    }
    case 12: {
      Name a = rand_name(r);
      ProcVar x{"Y" + std::to_string(r.pick(3))};
      return F::in_prefix(a, x, sub(size - 1));
    }
    default: {
      Name a = rand_name(r);
      FormPtr pay = sub(half);
      FormPtr cont = sub(std::max(1, size - 1 - half));
      return F::out_prefix(a, pay, cont);
    }
  }
}

}  // namespace

ProcPtr generate_process(std::uint64_t seed, int maxConstructors) {
  if (maxConstructors < 1)
    throw std::invalid_argument("generate_process: bound must be positive");
  Rng r(seed);
  std::vector<ProcVar> bound;
  ProcPtr t = gen_proc(r, maxConstructors, bound);
  if (!hopi::is_closed(t))
    throw std::logic_error("generate_process: produced an open term");
  return t;
}

FormPtr generate_formula(std::uint64_t seed, Dialect dialect, int maxConstructors) {
  if (maxConstructors < 1)
    throw std::invalid_argument("generate_formula: bound must be positive");
  Rng r(seed);
  for (int attempt = 0; attempt < 64; attempt++) {
    std::vector<ProcVar> mus;
    FormPtr f = gen_formula(r, dialect, maxConstructors, mus);
    if (formula_size(f) <= maxConstructors && in_dialect(f, dialect)) return f;
  }
  return F::truth();
}

}  // namespace hopi::corpus
