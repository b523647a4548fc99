#pragma once

#include <string>
#include <vector>

#include "psi/instance.hpp"

namespace psi {

struct LawResult {
  std::string law;
  bool pass = true;
  bool informative = false;  // reported but never failing (weakening etc.)
  size_t trials = 0;
  std::string counterexample;  // empty when passing
};

struct ConformanceReport {
  std::string instance;
  std::vector<LawResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.informative && !r.pass) return false;
    return true;
  }
  std::string to_json() const;
};

struct GeneratorExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Assertion equivalence over an explicit finite probe set.
bool assertion_equivalent(const Instance& inst, const Assertion& a,
                          const Assertion& b,
                          const std::vector<Condition>& probes);
// Probes drawn from the instance's basis.
bool assertion_equivalent(const Instance& inst, const Assertion& a,
                          const Assertion& b);

bool frame_equivalent(const Instance& inst, const Frame& f, const Frame& g);

// Randomized checks of the channel-equivalence and abelian-monoid
// requisites; weakening and idempotence are reported informatively.
ConformanceReport check_requisites(const Instance& inst, Workspace& ws,
                                   size_t trials, uint64_t seed);

// Randomized checks of the two substitution laws plus equivariance of
// substitution, on terms, conditions and assertions.
ConformanceReport check_substitution_laws(const Instance& inst, Workspace& ws,
                                          size_t trials, uint64_t seed);

}  // namespace psi
