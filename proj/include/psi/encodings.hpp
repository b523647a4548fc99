#pragma once

#include "psi/semantics.hpp"

namespace psi {

// ---------------------------------------------------------------------
// The standard pi-calculus (replication, match, sum; no mismatch), with
// its own early-style reference semantics independent of the psi engine.

enum class PiKind { Nil, Output, Input, Par, Rep, Res, Match, Sum };

struct PiNode;
using PiPtr = std::shared_ptr<const PiNode>;

struct PiNode {
  PiKind kind = PiKind::Nil;
  Name chan{}, obj{}, var{}, res{};  // a!b / a(x) / (new r)
  Name m1{}, m2{};                   // [m1=m2]P
  PiPtr left, right, body;
};

PiPtr pi_nil();
PiPtr pi_output(Name chan, Name obj, PiPtr body);
PiPtr pi_input(Name chan, Name var, PiPtr body);
PiPtr pi_par(PiPtr l, PiPtr r);
PiPtr pi_rep(PiPtr body);
PiPtr pi_res(Name a, PiPtr body);
PiPtr pi_match(Name a, Name b, PiPtr body);
PiPtr pi_sum(PiPtr l, PiPtr r);

NameSet support(const PiPtr& p);
PiPtr apply_perm(const Permutation& perm, const PiPtr& p);
PiPtr pi_substitute(const PiPtr& p, Name x, Name b);
bool pi_alpha_equal(const PiPtr& a, const PiPtr& b);
std::string pi_canonical_key(const PiPtr& p);

// Concrete syntax: a!b.P | a?(x).P | [a=b]P | P + Q | (new a)P | !P | 0
PiPtr pi_parse(const std::string& text, Workspace& ws);
std::string pi_print(const PiPtr& p, const NameTable& names);

struct PiAction {
  enum class Kind { Out, BoundOut, In, Tau };
  Kind kind = Kind::Tau;
  Name subj{}, obj{};
};

struct PiTransition {
  PiAction act;
  PiPtr deriv;
};

// Early pi LTS; inputs range over `candidates`; replication unfolds up to
// rep_bound, setting *truncated beyond it.
std::vector<PiTransition> pi_reference_transitions(const PiPtr& p,
                                                   const std::vector<Name>& candidates,
                                                   int rep_bound,
                                                   bool* truncated = nullptr);

// ---------------------------------------------------------------------
// The encoding into the pi psi-calculus instance.

AgentPtr encode_pi(const PiPtr& p);
Action encode_pi_action(const PiAction& a);

struct CorrespondenceReport {
  size_t agents = 0;
  size_t mismatches = 0;
  std::vector<std::string> details;
  bool ok() const { return mismatches == 0; }
};

// Both directions of the transition correspondence, on a given corpus.
CorrespondenceReport correspondence_check(const std::vector<PiPtr>& corpus,
                                          const Instance& pi_inst,
                                          const NameTable& names, int rep_bound);

PiPtr random_pi_agent(Rng& rng, const NameSeq& pool, int depth,
                      bool allow_rep = true);

// ---------------------------------------------------------------------
// pi-F: symmetric prefixes carrying datum vectors, explicit fusions.

enum class PifKind { Nil, Output, Input, Fusion, Par, Res, Rep };

struct PifNode;
using PifPtr = std::shared_ptr<const PifNode>;

struct PifNode {
  PifKind kind = PifKind::Nil;
  Name chan{};
  NameSeq datums;       // Output/Input
  NameSeq lhs, rhs;     // Fusion x~ = y~
  Name res{};
  PifPtr left, right, body;
};

PifPtr pif_nil();
PifPtr pif_output(Name chan, NameSeq datums, PifPtr body);
PifPtr pif_input(Name chan, NameSeq datums, PifPtr body);
PifPtr pif_fusion(NameSeq lhs, NameSeq rhs);
PifPtr pif_par(PifPtr l, PifPtr r);
PifPtr pif_res(Name a, PifPtr body);
PifPtr pif_rep(PifPtr body);

NameSet support(const PifPtr& p);
PifPtr apply_perm(const Permutation& perm, const PifPtr& p);

// Concrete syntax: a!<x,y>.P | a?<x,y>.P | [x,y=u,v] | (new a)P | !P | P|Q | 0
PifPtr pif_parse(const std::string& text, Workspace& ws);
std::string pif_print(const PifPtr& p, const NameTable& names);

// The encoding into the fusion instance; the fresh input-pattern names are
// drawn above everything in the agent.
AgentPtr encode_pif(const PifPtr& p);

// Desk-scale pi-F reducer on structural-congruence normal forms:
// restrictions floated out, fusions collected into a store.
struct PifLabel {
  enum class Kind { Out, In, Tau };
  Kind kind = Kind::Tau;
  Name subj{};
  NameSeq datums;
  NameSeq extruded;  // restricted datums opened by the step (outputs)
};

struct PifTransition {
  PifLabel label;
  PifPtr deriv;  // normal form
};

PifPtr pif_normalize(const PifPtr& p);
bool pif_struct_equal(const PifPtr& a, const PifPtr& b);
std::vector<PifTransition> pif_transitions(const PifPtr& p);

}  // namespace psi
