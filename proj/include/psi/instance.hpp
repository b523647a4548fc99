#pragma once

#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "psi/frame.hpp"

namespace psi {

using Rng = std::mt19937_64;

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(size_t pos, const std::string& msg)
      : std::runtime_error(msg), position(pos) {}
};

struct ArityMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class TermCursor;  // token cursor handed to instance sub-parsers (parser.hpp)

// One psi-calculus: the three nominal datatypes T/C/A together with
// channel equivalence, composition, unit, entailment and substitution,
// plus the finite probe/extension bases that make equivalence and the
// bisimulation game checkable.
class Instance {
 public:
  virtual ~Instance() = default;

  virtual std::string name() const = 0;

  virtual Condition chan_eq(const Term& m, const Term& n) const = 0;
  virtual Assertion compose(const Assertion& a, const Assertion& b) const = 0;
  virtual Assertion unit() const { return Assertion::unit(); }
  virtual bool entails(const Assertion& psi, const Condition& c) const = 0;

  virtual Term subst_term(const Term& t, const NameSeq& xs,
                          const std::vector<Term>& ls) const;
  virtual Condition subst_cond(const Condition& c, const NameSeq& xs,
                               const std::vector<Term>& ls) const;
  virtual Assertion subst_assert(const Assertion& a, const NameSeq& xs,
                                 const std::vector<Term>& ls) const;

  // Matches candidate against the pattern (\xs)pattern; returns the terms
  // bound to xs such that pattern[xs := result] equals candidate.
  virtual std::optional<std::vector<Term>> match_pattern(
      const NameSeq& xs, const Term& pattern, const Term& candidate) const;

  // Finite condition set sufficient to distinguish the two frames.
  virtual std::vector<Condition> condition_probe_basis(const Frame& f,
                                                       const Frame& g) const = 0;
  virtual bool probe_basis_exact() const = 0;

  // Finite assertion set used when extending environments in the
  // bisimulation game. `scope` is the full support of the game triple and
  // includes one designated fresh name.
  virtual std::vector<Assertion> assertion_extension_basis(
      const Assertion& psi, const NameSet& scope) const = 0;
  virtual bool extension_basis_exact() const = 0;

  // Terms K with psi |- M <-> K worth considering as rewritten subjects,
  // beyond the syntactic subjects of the system (the engine adds those).
  virtual std::vector<Term> channel_candidates(const Term& m,
                                               const Assertion& psi) const {
    (void)psi;
    return {m};
  }

  // A semantic normal form for memoization keys: equivalent assertions
  // should map to equal values where the instance can afford it.
  virtual Assertion assertion_normal_form(const Assertion& a) const {
    Assertion r = a;
    r.canonicalize();
    return r;
  }

  // Concrete syntax hooks. The generic lexer hands over a balanced token
  // run; the instance decides what terms/conditions/assertions look like.
  virtual Term parse_term(TermCursor& cur, Workspace& ws) const;
  virtual Condition parse_condition(TermCursor& cur, Workspace& ws) const;
  virtual Assertion parse_assertion(TermCursor& cur, Workspace& ws) const;
  virtual std::string print_term_text(const Term& t, const NameTable& names) const;
  virtual std::string print_condition(const Condition& c, const NameTable& names) const;
  virtual std::string print_assertion(const Assertion& a, const NameTable& names) const;

  // Random generators for the conformance suite.
  virtual Term random_term(Rng& rng, const NameSeq& pool) const = 0;
  virtual Condition random_condition(Rng& rng, const NameSeq& pool) const = 0;
  virtual Assertion random_assertion(Rng& rng, const NameSeq& pool) const = 0;
  // A differently-presented assertion with the same meaning (used for the
  // compositionality requisite); default reshuffles set-like content.
  virtual Assertion equivalent_variant(const Assertion& a, Rng& rng) const;

  // Signature symbols the generic term parser should accept as
  // applications; empty means names only.
  virtual bool accepts_symbol(const std::string& sym, size_t arity) const {
    (void)sym;
    (void)arity;
    return false;
  }
};

using InstancePtr = std::shared_ptr<const Instance>;

}  // namespace psi
