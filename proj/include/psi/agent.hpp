#pragma once

#include <memory>
#include <vector>

#include "psi/frame.hpp"
#include "psi/instance.hpp"

namespace psi {

enum class AgentKind {
  Nil,
  Output,       // subj!obj . body
  Input,        // subj?(\vars)obj . body   (vars bind into obj and body)
  Case,         // case c1:P1 [] ... [] cn:Pn
  Restriction,  // (new bound) body
  Parallel,     // left | right
  Replication,  // ! body
  Assert        // (|assertion|)
};

struct AgentNode;
using AgentPtr = std::shared_ptr<const AgentNode>;

struct CaseBranch {
  Condition cond;
  AgentPtr body;
};

struct AgentNode {
  AgentKind kind = AgentKind::Nil;
  Term subj, obj;
  NameSeq vars;
  std::vector<CaseBranch> branches;
  Name bound{};
  AgentPtr body;
  AgentPtr left, right;
  Assertion assertion;
};

AgentPtr nil();
AgentPtr output(Term subj, Term obj, AgentPtr body);
// Throws IllFormed when vars are duplicated or not all in support(obj).
AgentPtr input(Term subj, NameSeq vars, Term obj, AgentPtr body);
AgentPtr case_agent(std::vector<CaseBranch> branches);
AgentPtr restriction(Name bound, AgentPtr body);
AgentPtr parallel(AgentPtr left, AgentPtr right);
AgentPtr replication(AgentPtr body);
AgentPtr assertion_agent(Assertion a);

struct IllFormed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

NameSet support(const AgentPtr& p);
AgentPtr apply_perm(const Permutation& perm, const AgentPtr& p);

// True iff no subterm violates guardedness (no unguarded assertion under
// replication or in a case branch) or the input pattern conditions.
bool well_formed(const AgentPtr& p);
bool has_unguarded_assertion(const AgentPtr& p);

bool alpha_equal(const AgentPtr& a, const AgentPtr& b);

// Renumbers binders in leftmost-innermost traversal order, starting just
// above the free support; alpha-equivalent agents map to equal trees.
AgentPtr canonicalize(const AgentPtr& p);
// Stable map/set key for alpha-equivalence classes.
std::string canonical_key(const AgentPtr& p);

// Capture-avoiding simultaneous substitution; term/condition/assertion
// leaves delegate to the instance's substitution functions.
AgentPtr substitute_agent(const AgentPtr& p, const NameSeq& xs,
                          const std::vector<Term>& ls, const Instance& inst);

// The frame of an agent; binders chosen fresh for `avoid` and for sibling
// components.
Frame frame_of(const AgentPtr& p, const Instance& inst,
               const NameSet& avoid = {});

Frame frame_compose(const Frame& f, const Frame& g, const Instance& inst);

// Def-style frame entailment: alpha-converts the binders away from the
// condition, then asks the instance.
bool frame_entails(const Frame& f, const Condition& c, const Instance& inst);

}  // namespace psi
