#include "psi/instance.hpp"

#include <algorithm>

#include "psi/parser.hpp"

namespace psi {

Term Instance::subst_term(const Term& t, const NameSeq& xs,
                          const std::vector<Term>& ls) const {
  return subst_syntactic(t, xs, ls);
}

Condition Instance::subst_cond(const Condition& c, const NameSeq& xs,
                               const std::vector<Term>& ls) const {
  if (c.kind == CondKind::Consistent)
    return Condition::consistent(subst_assert(*c.inner, xs, ls));
  Condition r = c;
  r.lhs = subst_term(c.lhs, xs, ls);
  r.rhs = subst_term(c.rhs, xs, ls);
  return r;
}

Assertion Instance::subst_assert(const Assertion& a, const NameSeq& xs,
                                 const std::vector<Term>& ls) const {
  Assertion r = a;
  for (Term& t : r.elems) t = subst_term(t, xs, ls);
  for (auto& [l, rr] : r.eqs) {
    l = subst_term(l, xs, ls);
    rr = subst_term(rr, xs, ls);
  }
  r.canonicalize();
  return r;
}

namespace {

// Structural first-order matching: pattern variables in `xs` may each bind
// one subterm; everything else must agree literally.
bool match_rec(const Term& pattern, const Term& cand, const NameSeq& xs,
               std::vector<std::optional<Term>>& binding) {
  if (pattern.is_name()) {
    Name v = pattern.as_name();
    for (size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] == v) {
        if (binding[i]) return *binding[i] == cand;
        binding[i] = cand;
        return true;
      }
    }
    return cand.is_name() && cand.as_name() == v;
  }
  if (cand.is_name()) return false;
  if (pattern.symbol() != cand.symbol() ||
      pattern.args().size() != cand.args().size())
    return false;
  for (size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_rec(pattern.args()[i], cand.args()[i], xs, binding)) return false;
  return true;
}

}  // namespace

std::optional<std::vector<Term>> Instance::match_pattern(
    const NameSeq& xs, const Term& pattern, const Term& candidate) const {
  std::vector<std::optional<Term>> binding(xs.size());
  if (!match_rec(pattern, candidate, xs, binding)) return std::nullopt;
  std::vector<Term> out;
  out.reserve(xs.size());
  for (auto& b : binding) {
    if (!b) return std::nullopt;  // every pattern variable must be bound
    out.push_back(*b);
  }
  return out;
}

Term Instance::parse_term(TermCursor& cur, Workspace& ws) const {
  return parse_term_generic(cur, ws, *this);
}

Condition Instance::parse_condition(TermCursor& cur, Workspace& ws) const {
  return parse_condition_generic(cur, ws, *this);
}

Assertion Instance::parse_assertion(TermCursor& cur, Workspace& ws) const {
  return parse_assertion_generic(cur, ws, *this, unit().kind);
}

std::string Instance::print_term_text(const Term& t, const NameTable& names) const {
  return print_term(t, names);
}

std::string Instance::print_condition(const Condition& c, const NameTable& names) const {
  switch (c.kind) {
    case CondKind::TermEq:
      return print_term(c.lhs, names) + " = " + print_term(c.rhs, names);
    case CondKind::ChanEq:
      return print_term(c.lhs, names) + " <-> " + print_term(c.rhs, names);
    case CondKind::Consistent:
      return "cons " + print_assertion(*c.inner, names);
  }
  return "";
}

std::string Instance::print_assertion(const Assertion& a, const NameTable& names) const {
  switch (a.kind) {
    case AssertKind::Unit:
      return "1";
    case AssertKind::Names: {
      std::string out = "{";
      for (size_t i = 0; i < a.elems.size(); ++i) {
        if (i) out += ",";
        out += print_term(a.elems[i], names);
      }
      return out + "}";
    }
    case AssertKind::Equations:
    case AssertKind::Store: {
      if (a.bottom) return "bot";
      std::string out = "{";
      for (size_t i = 0; i < a.eqs.size(); ++i) {
        if (i) out += ",";
        out += print_term(a.eqs[i].first, names) + "=" +
               print_term(a.eqs[i].second, names);
      }
      return out + "}";
    }
  }
  return "";
}

Assertion Instance::equivalent_variant(const Assertion& a, Rng& rng) const {
  (void)rng;
  return a;  // instances with richer stores override with real variants
}

}  // namespace psi
