#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "psi/term.hpp"

namespace psi {

// Universal carrier for the shipped instances' assertions:
//   Unit       -- the single trivial assertion (pi family)
//   NameSet    -- finite sets of names (common-channel pool)
//   Equations  -- finite sets of term equations (fusion, crypto)
//   Store      -- equations plus an inconsistency marker (constraints)
// Which operations make sense for which kind is the instance's business.
enum class AssertKind { Unit, Names, Equations, Store };

struct Assertion {
  AssertKind kind = AssertKind::Unit;
  std::vector<Term> elems;                      // Names
  std::vector<std::pair<Term, Term>> eqs;       // Equations / Store
  bool bottom = false;                          // Store: inconsistent marker

  static Assertion unit() { return Assertion{}; }
  static Assertion names(std::vector<Term> ns);
  static Assertion equations(std::vector<std::pair<Term, Term>> es,
                             AssertKind k = AssertKind::Equations);
  static Assertion store_bottom();

  // Sorts and dedupes content; equations oriented smaller-side-first.
  void canonicalize();
  bool operator==(const Assertion& o) const;
  bool operator!=(const Assertion& o) const { return !(*this == o); }
};

NameSet support(const Assertion& a);
Assertion apply_perm(const Permutation& p, const Assertion& a);
Assertion subst_syntactic(const Assertion& a, const NameSeq& xs,
                          const std::vector<Term>& ls);

// Conditions: term equality M = N, channel equivalence M <-> N, or the
// store-consistency test cons(Psi).
enum class CondKind { TermEq, ChanEq, Consistent };

struct Condition {
  CondKind kind = CondKind::TermEq;
  Term lhs, rhs;
  std::optional<Assertion> inner;  // Consistent

  static Condition term_eq(Term a, Term b) {
    return Condition{CondKind::TermEq, std::move(a), std::move(b), std::nullopt};
  }
  static Condition chan_eq(Term a, Term b) {
    return Condition{CondKind::ChanEq, std::move(a), std::move(b), std::nullopt};
  }
  static Condition consistent(Assertion a) {
    Condition c;
    c.kind = CondKind::Consistent;
    c.inner = std::move(a);
    return c;
  }

  bool operator==(const Condition& o) const;
  bool operator!=(const Condition& o) const { return !(*this == o); }
};

NameSet support(const Condition& c);
Condition apply_perm(const Permutation& p, const Condition& c);
Condition subst_syntactic(const Condition& c, const NameSeq& xs,
                          const std::vector<Term>& ls);

bool cond_less(const Condition& a, const Condition& b);

// Deterministic id-based serializations, for map keys.
std::string serialize_ids(const Term& t);
std::string serialize_ids(const Assertion& a);

}  // namespace psi
