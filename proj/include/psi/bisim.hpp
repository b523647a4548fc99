#pragma once

#include "psi/semantics.hpp"

namespace psi {

// Refutation evidence: a tree of challenger moves whose every defender
// reply is itself refuted, rooted at a clause failure.
struct Witness;
using WitnessPtr = std::shared_ptr<const Witness>;

struct Witness {
  enum class Kind { StaticFail, UnmatchedMove, ExtendFail };
  Kind kind = Kind::StaticFail;
  Assertion env;
  AgentPtr left, right;   // the refuted pair, left/right as given
  bool mover_left = true; // UnmatchedMove: which side moved
  Action action;          // UnmatchedMove: the challenger action
  AgentPtr deriv;         // UnmatchedMove: challenger derivative
  // every defender reply with a matching action, each refuted
  std::vector<std::pair<AgentPtr, WitnessPtr>> replies;
  Assertion extension;    // ExtendFail: the added assertion
  WitnessPtr inner;       // ExtendFail: refutation in the extended env
};

struct Verdict {
  enum class Kind { Bisimilar, NotBisimilar, Inconclusive };
  Kind kind = Kind::Inconclusive;
  bool bases_exact = false;     // probe and extension bases both exact
  bool rep_bounded = false;     // replication truncation occurred somewhere
  size_t states_explored = 0;
  WitnessPtr witness;           // NotBisimilar
  std::string reason;           // Inconclusive

  bool positive() const { return kind == Kind::Bisimilar; }
};

struct GameConfig {
  size_t max_depth = 64;
  size_t max_states = 200000;
  int rep_bound = 8;
  // Input labels for the simulation clauses; when empty, candidates are
  // collected from the pair (output objects, free names, one fresh name).
  std::vector<Term> candidates;
};

Verdict bisimilar(const Assertion& env, const AgentPtr& p, const AgentPtr& q,
                  const Instance& inst, const GameConfig& cfg = {});

// The binary variant: environment fixed at unit, extension realized by
// parallel assertion contexts.
Verdict context_bisimilar(const AgentPtr& p, const AgentPtr& q,
                          const Instance& inst, const GameConfig& cfg = {});

// Checks a NotBisimilar witness step by step against the semantics;
// returns false if any node fails to replay.
bool verify_witness(const WitnessPtr& w, const Instance& inst,
                    const GameConfig& cfg = {});

std::string witness_to_json(const WitnessPtr& w, const Instance& inst,
                            const NameTable& names);
std::string verdict_to_json(const Verdict& v, const Instance& inst,
                            const NameTable& names);

// ---------------------------------------------------------------------
// Structural-law suite (the congruence closed under substitution
// sequences is sampled, not proved).

struct SubstitutionStep {
  NameSeq names;
  std::vector<Term> terms;
};
using SubstitutionSeq = std::vector<SubstitutionStep>;

struct LawReport {
  std::string law;
  size_t checked = 0;
  size_t positive = 0;
  std::vector<std::string> failures;
};

std::vector<LawReport> check_structural_laws(const Instance& inst, Workspace& ws,
                                             size_t agents_per_law,
                                             size_t substs_per_agent,
                                             uint64_t seed,
                                             const GameConfig& cfg = {});

// Random well-formed agent generation (shared with tests).
AgentPtr random_agent(const Instance& inst, Rng& rng, const NameSeq& pool,
                      int depth, bool allow_assertions = true,
                      bool allow_replication = false);

SubstitutionSeq random_substitution_seq(const Instance& inst, Rng& rng,
                                        const NameSeq& pool, const NameSet& from);

AgentPtr apply_substitution_seq(const AgentPtr& p, const SubstitutionSeq& seq,
                                const Instance& inst);

}  // namespace psi
