#pragma once

// Curated and random fixtures: the output-chain formula family with its
// witnesses, and seeded generators for property tests.

#include <cstdint>

#include "hopi/formula.hpp"
#include "hopi/syntax.hpp"

namespace hopi::corpus {

using hopi::Dialect;
using hopi::FormPtr;
using hopi::ProcPtr;

struct PhiInstance {
  int index = 1;
  FormPtr formula;  // out a<0>.out a<b.0>. ... .T with deepening payloads
  ProcPtr witness;  // the same chain ending in 0
};

// The n-th member (n >= 1): n nested outputs at a, the i-th payload being
// a chain of i-1 inputs at b over 0.
PhiInstance phi_family(int n);

// Deterministic generators. Processes are closed; formulas are valid in
// the requested dialect with positive fixpoints.
ProcPtr generate_process(std::uint64_t seed, int maxConstructors);
FormPtr generate_formula(std::uint64_t seed, Dialect dialect, int maxConstructors);

}  // namespace hopi::corpus
