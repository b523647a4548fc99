#pragma once

#include "psi/agent.hpp"

namespace psi {

// Actions: output with opened names, early input, or tau. InSchema is the
// unlabelled form reported under the symbolic input policy.
struct Action {
  enum class Kind { Out, In, Tau, InSchema };
  Kind kind = Kind::Tau;
  Term subject;
  NameSeq opened;     // Out: names opened by the action, subset of n(object)
  Term object;        // Out/In: the transmitted term; InSchema: the pattern
  NameSeq schema_vars;

  static Action tau() { return Action{}; }
  static Action out(Term subj, NameSeq opened, Term obj) {
    Action a;
    a.kind = Kind::Out;
    a.subject = std::move(subj);
    a.opened = std::move(opened);
    a.object = std::move(obj);
    return a;
  }
  static Action in(Term subj, Term obj) {
    Action a;
    a.kind = Kind::In;
    a.subject = std::move(subj);
    a.object = std::move(obj);
    return a;
  }
};

NameSet support(const Action& a);
inline const NameSeq& bound_names(const Action& a) { return a.opened; }

// An action with its derivative; for outputs the opened names bind into
// both the object and the derivative.
struct Residual {
  Action act;
  AgentPtr deriv;
};

bool alpha_equal(const Residual& a, const Residual& b);
std::string residual_key(const Residual& r);

struct Transition {
  Assertion env;
  AgentPtr source;
  Residual res;
  std::string rule;  // root rule of the derivation
};

struct InputPolicy {
  enum class Kind { ClosedSystem, Candidates, SymbolicOnly };
  Kind kind = Kind::ClosedSystem;
  std::vector<Term> candidates;

  static InputPolicy closed() { return {}; }
  static InputPolicy with_candidates(std::vector<Term> cs) {
    InputPolicy p;
    p.kind = Kind::Candidates;
    p.candidates = std::move(cs);
    return p;
  }
  static InputPolicy symbolic() {
    InputPolicy p;
    p.kind = Kind::SymbolicOnly;
    return p;
  }
};

struct DepthExceeded : std::runtime_error {
  int bound;
  explicit DepthExceeded(int b)
      : std::runtime_error("replication unfolding exceeded bound " +
                           std::to_string(b)),
        bound(b) {}
};

struct TransitionsResult {
  std::vector<Transition> list;
  // True when some replication was left unexplored at the budget; the
  // listed transitions are still genuine.
  bool truncated = false;
};

TransitionsResult transitions(const Assertion& env, const AgentPtr& p,
                              const Instance& inst,
                              const InputPolicy& policy = InputPolicy::closed(),
                              int rep_bound = 8);

std::string print_action(const Action& a, const NameTable& names);

// ---------------------------------------------------------------------

enum class Scheduler { First, Random };

struct TraceStep {
  Residual res;
};

struct Trace {
  AgentPtr initial;
  std::vector<TraceStep> steps;
  bool quiescent = false;  // stopped with no tau available (and no truncation)
};

// Repeatedly follows tau transitions. Throws DepthExceeded when the step
// enumeration was truncated and no tau is available (the two would be
// indistinguishable otherwise).
Trace run_trace(const Assertion& env, const AgentPtr& p, const Instance& inst,
                size_t steps, const InputPolicy& policy, Scheduler sched,
                uint64_t seed = 0, int rep_bound = 8);

// ---------------------------------------------------------------------

struct LtsBounds {
  size_t max_states = 10000;
  size_t max_depth = 32;
};

struct LtsEdge {
  size_t src;
  std::string label;
  size_t dst;
};

struct LtsGraph {
  std::vector<AgentPtr> states;  // index = id, 0 is the root
  std::vector<LtsEdge> edges;
  bool truncated = false;
};

LtsGraph build_lts(const Assertion& env, const AgentPtr& p, const Instance& inst,
                   const LtsBounds& bounds, const InputPolicy& policy,
                   const NameTable& names, int rep_bound = 8);

std::string lts_to_dot(const LtsGraph& g, const Instance& inst,
                       const NameTable& names);
std::string lts_to_json(const LtsGraph& g, const Instance& inst,
                        const NameTable& names);

}  // namespace psi
