#pragma once

// Soundness spot-checks: instantiate axiom schemas with random small
// material and check the instances on random processes. A definite
// counterexample is a soundness violation and fails the run.

#include <cstdint>
#include <string>
#include <vector>

#include "hopi/axioms.hpp"
#include "hopi/checker.hpp"

namespace hopi::proofs {

struct ValidityReport {
  std::string schema;
  bool sampled = true;       // false: catalogued but excluded from sampling
  int instances = 0;         // distinct instances built
  int checks = 0;            // (instance, process) verdicts
  int holds = 0;
  int unknown = 0;
  int fails = 0;             // any nonzero is a soundness violation
  std::string counterexample;  // "process |/= instance" when fails > 0
};

ValidityReport validity_sample(const std::string& schemaId, int trials,
                               const Budget& b, std::uint64_t seed);

std::vector<ValidityReport> validity_sample_all(int trials, const Budget& b,
                                                std::uint64_t seed);

}  // namespace hopi::proofs
