#include "psi/assertion.hpp"

#include <algorithm>

namespace psi {

Assertion Assertion::names(std::vector<Term> ns) {
  Assertion a;
  a.kind = AssertKind::Names;
  a.elems = std::move(ns);
  a.canonicalize();
  return a;
}

Assertion Assertion::equations(std::vector<std::pair<Term, Term>> es, AssertKind k) {
  Assertion a;
  a.kind = k;
  a.eqs = std::move(es);
  a.canonicalize();
  return a;
}

Assertion Assertion::store_bottom() {
  Assertion a;
  a.kind = AssertKind::Store;
  a.bottom = true;
  return a;
}

void Assertion::canonicalize() {
  std::sort(elems.begin(), elems.end(), term_less);
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (auto& e : eqs)
    if (term_less(e.second, e.first)) std::swap(e.first, e.second);
  std::sort(eqs.begin(), eqs.end(), [](const auto& a, const auto& b) {
    if (int c = compare(a.first, b.first)) return c < 0;
    return compare(a.second, b.second) < 0;
  });
  eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());
  if (bottom) eqs.clear();
}

bool Assertion::operator==(const Assertion& o) const {
  return kind == o.kind && bottom == o.bottom && elems == o.elems && eqs == o.eqs;
}

NameSet support(const Assertion& a) {
  NameSet s;
  for (const Term& t : a.elems) collect_support(t, s);
  for (const auto& [l, r] : a.eqs) {
    collect_support(l, s);
    collect_support(r, s);
  }
  return s;
}

Assertion apply_perm(const Permutation& p, const Assertion& a) {
  Assertion r = a;
  for (Term& t : r.elems) t = apply_perm(p, t);
  for (auto& [l, rr] : r.eqs) {
    l = apply_perm(p, l);
    rr = apply_perm(p, rr);
  }
  r.canonicalize();
  return r;
}

Assertion subst_syntactic(const Assertion& a, const NameSeq& xs,
                          const std::vector<Term>& ls) {
  Assertion r = a;
  for (Term& t : r.elems) t = subst_syntactic(t, xs, ls);
  for (auto& [l, rr] : r.eqs) {
    l = subst_syntactic(l, xs, ls);
    rr = subst_syntactic(rr, xs, ls);
  }
  r.canonicalize();
  return r;
}

bool Condition::operator==(const Condition& o) const {
  if (kind != o.kind) return false;
  if (kind == CondKind::Consistent) return *inner == *o.inner;
  return lhs == o.lhs && rhs == o.rhs;
}

NameSet support(const Condition& c) {
  if (c.kind == CondKind::Consistent) return support(*c.inner);
  NameSet s = support(c.lhs);
  collect_support(c.rhs, s);
  return s;
}

Condition apply_perm(const Permutation& p, const Condition& c) {
  if (c.kind == CondKind::Consistent)
    return Condition::consistent(apply_perm(p, *c.inner));
  Condition r = c;
  r.lhs = apply_perm(p, c.lhs);
  r.rhs = apply_perm(p, c.rhs);
  return r;
}

Condition subst_syntactic(const Condition& c, const NameSeq& xs,
                          const std::vector<Term>& ls) {
  if (c.kind == CondKind::Consistent)
    return Condition::consistent(subst_syntactic(*c.inner, xs, ls));
  Condition r = c;
  r.lhs = subst_syntactic(c.lhs, xs, ls);
  r.rhs = subst_syntactic(c.rhs, xs, ls);
  return r;
}

namespace {
void ser_term(const Term& t, std::string& out) {
  if (t.is_name()) {
    out += "n" + std::to_string(t.as_name().id);
    return;
  }
  out += t.symbol();
  out += "(";
  for (const Term& a : t.args()) {
    ser_term(a, out);
    out += ",";
  }
  out += ")";
}
}  // namespace

std::string serialize_ids(const Term& t) {
  std::string out;
  ser_term(t, out);
  return out;
}

std::string serialize_ids(const Assertion& a) {
  std::string out = "A" + std::to_string(static_cast<int>(a.kind));
  if (a.bottom) out += "!";
  out += "{";
  for (const Term& t : a.elems) {
    ser_term(t, out);
    out += ";";
  }
  for (const auto& [l, r] : a.eqs) {
    ser_term(l, out);
    out += "=";
    ser_term(r, out);
    out += ";";
  }
  return out + "}";
}

bool cond_less(const Condition& a, const Condition& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind == CondKind::Consistent) {
    // compare by canonical equation lists
    const Assertion& x = *a.inner;
    const Assertion& y = *b.inner;
    if (x.bottom != y.bottom) return y.bottom;
    return std::lexicographical_compare(
        x.eqs.begin(), x.eqs.end(), y.eqs.begin(), y.eqs.end(),
        [](const auto& p, const auto& q) {
          if (int c = compare(p.first, q.first)) return c < 0;
          return compare(p.second, q.second) < 0;
        });
  }
  if (int c = compare(a.lhs, b.lhs)) return c < 0;
  return compare(a.rhs, b.rhs) < 0;
}

}  // namespace psi
