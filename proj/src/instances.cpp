#include "psi/instances.hpp"

#include <algorithm>

#include "psi/parser.hpp"
#include "psi/rewrite.hpp"
#include "psi/unionfind.hpp"

namespace psi {

namespace {

Name pick_name(Rng& rng, const NameSeq& pool) {
  std::uniform_int_distribution<size_t> d(0, pool.size() - 1);
  return pool[d(rng)];
}

struct GeneratorExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Term random_name_term(Rng& rng, const NameSeq& pool) {
  if (pool.empty()) throw GeneratorExhausted("empty name pool");
  return Term::name(pick_name(rng, pool));
}

// Two fresh names beyond a support set, for probes that must be able to
// tell an all-entailing assertion from an inert one.
std::pair<Name, Name> fresh_pair(const NameSet& avoid) {
  NameSeq f = fresh_names(2, avoid);
  return {f[0], f[1]};
}

NameSet combined_support(const Frame& f, const Frame& g) {
  return set_union(support(f), support(g));
}

NameUnionFind closure_of(const Assertion& a) {
  NameUnionFind uf;
  for (const auto& [l, r] : a.eqs)
    if (l.is_name() && r.is_name()) uf.merge(l.as_name(), r.as_name());
  return uf;
}

// ---------------------------------------------------------------------

class PiInstance : public Instance {
 public:
  std::string name() const override { return "pi"; }

  Condition chan_eq(const Term& m, const Term& n) const override {
    return Condition::term_eq(m, n);
  }
  Assertion compose(const Assertion&, const Assertion&) const override {
    return Assertion::unit();
  }
  bool entails(const Assertion&, const Condition& c) const override {
    if (c.kind == CondKind::Consistent) return false;
    return c.lhs.is_name() && c.rhs.is_name() && c.lhs == c.rhs;
  }

  std::vector<Condition> condition_probe_basis(const Frame& f,
                                               const Frame& g) const override {
    std::vector<Condition> out;
    NameSet sup = combined_support(f, g);
    auto [x, y] = fresh_pair(sup);
    out.push_back(Condition::term_eq(Term::name(x), Term::name(x)));
    out.push_back(Condition::term_eq(Term::name(x), Term::name(y)));
    for (Name a : sup)
      for (Name b : sup)
        if (!(b < a)) out.push_back(Condition::term_eq(Term::name(a), Term::name(b)));
    return out;
  }
  bool probe_basis_exact() const override { return true; }

  std::vector<Assertion> assertion_extension_basis(const Assertion&,
                                                   const NameSet&) const override {
    return {};  // only the unit exists
  }
  bool extension_basis_exact() const override { return true; }

  Term random_term(Rng& rng, const NameSeq& pool) const override {
    return random_name_term(rng, pool);
  }
  Condition random_condition(Rng& rng, const NameSeq& pool) const override {
    return Condition::term_eq(random_name_term(rng, pool),
                              random_name_term(rng, pool));
  }
  Assertion random_assertion(Rng&, const NameSeq&) const override {
    return Assertion::unit();
  }
};

// ---------------------------------------------------------------------

class PolyadicPiInstance : public Instance {
 public:
  std::string name() const override { return "polyadic"; }

  Condition chan_eq(const Term& m, const Term& n) const override {
    return Condition::chan_eq(m, n);
  }
  Assertion compose(const Assertion&, const Assertion&) const override {
    return Assertion::unit();
  }
  bool entails(const Assertion&, const Condition& c) const override {
    switch (c.kind) {
      case CondKind::TermEq:
        return c.lhs.is_name() && c.rhs.is_name() && c.lhs == c.rhs;
      case CondKind::ChanEq:
        // only names are channels
        return c.lhs.is_name() && c.lhs == c.rhs;
      case CondKind::Consistent:
        return false;
    }
    return false;
  }

  std::vector<Condition> condition_probe_basis(const Frame& f,
                                               const Frame& g) const override {
    std::vector<Condition> out;
    NameSet sup = combined_support(f, g);
    auto [x, y] = fresh_pair(sup);
    out.push_back(Condition::term_eq(Term::name(x), Term::name(y)));
    out.push_back(Condition::chan_eq(Term::name(x), Term::name(x)));
    for (Name a : sup)
      for (Name b : sup) {
        out.push_back(Condition::term_eq(Term::name(a), Term::name(b)));
        out.push_back(Condition::chan_eq(Term::name(a), Term::name(b)));
      }
    return out;
  }
  bool probe_basis_exact() const override { return true; }

  std::vector<Assertion> assertion_extension_basis(const Assertion&,
                                                   const NameSet&) const override {
    return {};
  }
  bool extension_basis_exact() const override { return true; }

  bool accepts_symbol(const std::string& sym, size_t arity) const override {
    if (sym.size() >= 2 && sym[0] == 't') {
      size_t n = 0;
      for (size_t i = 1; i < sym.size(); ++i) {
        if (!isdigit(static_cast<unsigned char>(sym[i]))) return false;
        n = n * 10 + (sym[i] - '0');
      }
      return n == arity && n >= 1;
    }
    return false;
  }

  Term random_term(Rng& rng, const NameSeq& pool) const override {
    std::uniform_int_distribution<int> d(0, 3);
    if (d(rng) == 0) {
      std::uniform_int_distribution<size_t> w(1, 3);
      size_t n = w(rng);
      std::vector<Term> args;
      for (size_t i = 0; i < n; ++i) args.push_back(random_name_term(rng, pool));
      return Term::app("t" + std::to_string(n), std::move(args));
    }
    return random_name_term(rng, pool);
  }
  Condition random_condition(Rng& rng, const NameSeq& pool) const override {
    std::uniform_int_distribution<int> d(0, 1);
    Term a = random_term(rng, pool);
    Term b = d(rng) ? a : random_term(rng, pool);
    return d(rng) ? Condition::chan_eq(a, b) : Condition::term_eq(a, b);
  }
  Assertion random_assertion(Rng&, const NameSeq&) const override {
    return Assertion::unit();
  }
};

// ---------------------------------------------------------------------

// Polyadic synchronisation: every term is channel equivalent to itself.
// The term language additionally admits free function symbols, which
// hosts structured-channel systems (frequency hopping, local services).
class PolySyncInstance : public PolyadicPiInstance {
 public:
  std::string name() const override { return "polysync"; }

  bool entails(const Assertion&, const Condition& c) const override {
    if (c.kind != CondKind::ChanEq) return false;  // equality conditions removed
    return c.lhs == c.rhs;
  }

  std::vector<Condition> condition_probe_basis(const Frame& f,
                                               const Frame& g) const override {
    std::vector<Condition> out;
    NameSet sup = combined_support(f, g);
    auto [x, y] = fresh_pair(sup);
    out.push_back(Condition::chan_eq(Term::name(x), Term::name(x)));
    out.push_back(Condition::chan_eq(Term::name(x), Term::name(y)));
    for (Name a : sup)
      for (Name b : sup) out.push_back(Condition::chan_eq(Term::name(a), Term::name(b)));
    return out;
  }

  bool accepts_symbol(const std::string& sym, size_t arity) const override {
    return arity >= 1 || PolyadicPiInstance::accepts_symbol(sym, arity);
  }

  Condition random_condition(Rng& rng, const NameSeq& pool) const override {
    std::uniform_int_distribution<int> d(0, 1);
    Term a = random_term(rng, pool);
    Term b = d(rng) ? a : random_term(rng, pool);
    return Condition::chan_eq(a, b);
  }
};

// ---------------------------------------------------------------------

// Fusion: assertions are finite sets of name equalities, entailment is
// membership in the equivalence closure. Name tuples are admitted as
// transport objects so the pi-F encoding has polyadic datums; channels
// remain names.
class FusionInstance : public Instance {
 public:
  std::string name() const override { return "fusion"; }

  Condition chan_eq(const Term& m, const Term& n) const override {
    return Condition::term_eq(m, n);
  }
  Assertion unit() const override {
    return Assertion::equations({}, AssertKind::Equations);
  }
  Assertion compose(const Assertion& a, const Assertion& b) const override {
    std::vector<std::pair<Term, Term>> eqs = a.eqs;
    eqs.insert(eqs.end(), b.eqs.begin(), b.eqs.end());
    return Assertion::equations(std::move(eqs));
  }
  bool entails(const Assertion& psi, const Condition& c) const override {
    if (c.kind == CondKind::Consistent) return false;
    if (!c.lhs.is_name() || !c.rhs.is_name()) return false;
    return closure_of(psi).same(c.lhs.as_name(), c.rhs.as_name());
  }

  std::vector<Term> channel_candidates(const Term& m,
                                       const Assertion& psi) const override {
    std::vector<Term> out{m};
    if (!m.is_name()) return out;
    NameUnionFind uf = closure_of(psi);
    for (Name n : support(psi))
      if (uf.same(m.as_name(), n) && !(Term::name(n) == m))
        out.push_back(Term::name(n));
    return out;
  }

  std::vector<Condition> condition_probe_basis(const Frame& f,
                                               const Frame& g) const override {
    std::vector<Condition> out;
    NameSet sup = combined_support(f, g);
    auto [x, y] = fresh_pair(sup);
    out.push_back(Condition::term_eq(Term::name(x), Term::name(y)));
    for (Name a : sup)
      for (Name b : sup)
        if (a < b) out.push_back(Condition::term_eq(Term::name(a), Term::name(b)));
    return out;
  }
  bool probe_basis_exact() const override { return true; }

  std::vector<Assertion> assertion_extension_basis(
      const Assertion&, const NameSet& scope) const override {
    std::vector<Assertion> out;
    for (Name a : scope)
      for (Name b : scope)
        if (a < b)
          out.push_back(Assertion::equations({{Term::name(a), Term::name(b)}}));
    return out;
  }
  bool extension_basis_exact() const override { return true; }

  bool accepts_symbol(const std::string& sym, size_t arity) const override {
    if (sym.size() >= 2 && sym[0] == 't') {
      size_t n = 0;
      for (size_t i = 1; i < sym.size(); ++i) {
        if (!isdigit(static_cast<unsigned char>(sym[i]))) return false;
        n = n * 10 + (sym[i] - '0');
      }
      return n == arity && n >= 1;
    }
    return false;
  }

  Term random_term(Rng& rng, const NameSeq& pool) const override {
    return random_name_term(rng, pool);
  }
  Condition random_condition(Rng& rng, const NameSeq& pool) const override {
    return Condition::term_eq(random_name_term(rng, pool),
                              random_name_term(rng, pool));
  }
  Assertion random_assertion(Rng& rng, const NameSeq& pool) const override {
    std::uniform_int_distribution<size_t> d(0, 3);
    size_t n = d(rng);
    std::vector<std::pair<Term, Term>> eqs;
    for (size_t i = 0; i < n; ++i)
      eqs.push_back({random_name_term(rng, pool), random_name_term(rng, pool)});
    return Assertion::equations(std::move(eqs));
  }
  Assertion equivalent_variant(const Assertion& a, Rng& rng) const override {
    // Re-present the store through its closure: alternative spanning
    // edges plus an optional reflexive pad.
    NameUnionFind uf = closure_of(a);
    std::vector<std::pair<Term, Term>> eqs;
    for (const auto& [n, r] : uf.canonical_pairs())
      eqs.push_back({Term::name(n), Term::name(r)});
    std::uniform_int_distribution<int> d(0, 1);
    NameSet sup = support(a);
    if (d(rng) && !sup.empty()) {
      Name c = *sup.begin();
      eqs.push_back({Term::name(c), Term::name(c)});
    }
    return Assertion::equations(std::move(eqs));
  }
  Assertion assertion_normal_form(const Assertion& a) const override {
    NameUnionFind uf = closure_of(a);
    std::vector<std::pair<Term, Term>> eqs;
    for (const auto& [n, r] : uf.canonical_pairs())
      eqs.push_back({Term::name(n), Term::name(r)});
    return Assertion::equations(std::move(eqs), a.kind);
  }
};

// ---------------------------------------------------------------------

// The common-channel pool: assertions are finite name sets and any two
// pooled names are channel equivalent.
class ChannelPoolInstance : public Instance {
 public:
  std::string name() const override { return "pool"; }

  Condition chan_eq(const Term& m, const Term& n) const override {
    return Condition::chan_eq(m, n);
  }
  Assertion unit() const override { return Assertion::names({}); }
  Assertion compose(const Assertion& a, const Assertion& b) const override {
    std::vector<Term> elems = a.elems;
    elems.insert(elems.end(), b.elems.begin(), b.elems.end());
    return Assertion::names(std::move(elems));
  }
  bool entails(const Assertion& psi, const Condition& c) const override {
    if (c.kind != CondKind::ChanEq) return false;
    if (!c.lhs.is_name() || !c.rhs.is_name()) return false;
    auto has = [&](const Term& t) {
      return std::find(psi.elems.begin(), psi.elems.end(), t) != psi.elems.end();
    };
    return has(c.lhs) && has(c.rhs);
  }

  std::vector<Term> channel_candidates(const Term& m,
                                       const Assertion& psi) const override {
    std::vector<Term> out{m};
    if (!m.is_name()) return out;
    auto has = [&](const Term& t) {
      return std::find(psi.elems.begin(), psi.elems.end(), t) != psi.elems.end();
    };
    if (!has(m)) return out;
    for (const Term& t : psi.elems)
      if (!(t == m)) out.push_back(t);
    return out;
  }

  std::vector<Condition> condition_probe_basis(const Frame& f,
                                               const Frame& g) const override {
    std::vector<Condition> out;
    NameSet sup = combined_support(f, g);
    auto [x, y] = fresh_pair(sup);
    out.push_back(Condition::chan_eq(Term::name(x), Term::name(y)));
    for (Name a : sup)
      for (Name b : sup)
        if (!(b < a)) out.push_back(Condition::chan_eq(Term::name(a), Term::name(b)));
    return out;
  }
  bool probe_basis_exact() const override { return true; }

  std::vector<Assertion> assertion_extension_basis(
      const Assertion&, const NameSet& scope) const override {
    std::vector<Assertion> out;
    for (Name a : scope) out.push_back(Assertion::names({Term::name(a)}));
    return out;
  }
  bool extension_basis_exact() const override { return true; }

  Term random_term(Rng& rng, const NameSeq& pool) const override {
    return random_name_term(rng, pool);
  }
  Condition random_condition(Rng& rng, const NameSeq& pool) const override {
    return Condition::chan_eq(random_name_term(rng, pool),
                              random_name_term(rng, pool));
  }
  Assertion random_assertion(Rng& rng, const NameSeq& pool) const override {
    std::uniform_int_distribution<size_t> d(0, 3);
    size_t n = d(rng);
    std::vector<Term> elems;
    for (size_t i = 0; i < n; ++i) elems.push_back(random_name_term(rng, pool));
    return Assertion::names(std::move(elems));
  }
};

// ---------------------------------------------------------------------

// Cryptographic terms: free signature terms, assertions are finite
// equation sets, entailment is ground congruence closure modulo the
// rewrite theory.
class CryptoInstance : public Instance {
 public:
  std::string name() const override { return "crypto"; }

  Condition chan_eq(const Term& m, const Term& n) const override {
    return Condition::term_eq(m, n);
  }
  Assertion unit() const override {
    return Assertion::equations({}, AssertKind::Equations);
  }
  Assertion compose(const Assertion& a, const Assertion& b) const override {
    std::vector<std::pair<Term, Term>> eqs = a.eqs;
    eqs.insert(eqs.end(), b.eqs.begin(), b.eqs.end());
    return Assertion::equations(std::move(eqs));
  }
  bool entails(const Assertion& psi, const Condition& c) const override {
    if (c.kind == CondKind::Consistent) return false;
    return crypto_entails_eq(psi.eqs, c.lhs, c.rhs);
  }

  std::vector<Term> channel_candidates(const Term& m,
                                       const Assertion& psi) const override {
    std::vector<Term> out{m};
    for (const auto& [l, r] : psi.eqs) {
      for (const Term& side : {l, r})
        if (!(side == m) && crypto_entails_eq(psi.eqs, m, side))
          out.push_back(side);
    }
    return out;
  }

  std::vector<Condition> condition_probe_basis(const Frame& f,
                                               const Frame& g) const override {
    // Subterm-closed probe terms containing only free names.
    NameSet fb = to_set(f.binders);
    NameSet gb = to_set(g.binders);
    std::vector<Term> cand;
    auto add_from = [&](const Frame& fr, const NameSet& binders) {
      for (const auto& [l, r] : fr.assertion.eqs) {
        for (const Term& side : {l, r}) {
          std::vector<Term> subs;
          collect_subterms(side, subs);
          for (const Term& s : subs)
            if (disjoint(support(s), binders)) cand.push_back(s);
        }
      }
    };
    add_from(f, fb);
    add_from(g, gb);
    for (Name n : combined_support(f, g)) cand.push_back(Term::name(n));
    std::sort(cand.begin(), cand.end(), term_less);
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<Condition> out;
    auto [x, y] = fresh_pair(combined_support(f, g));
    out.push_back(Condition::term_eq(Term::name(x), Term::name(y)));
    for (size_t i = 0; i < cand.size(); ++i)
      for (size_t j = i + 1; j < cand.size(); ++j)
        out.push_back(Condition::term_eq(cand[i], cand[j]));
    return out;
  }
  bool probe_basis_exact() const override { return true; }

  std::vector<Assertion> assertion_extension_basis(
      const Assertion&, const NameSet& scope) const override {
    // ground name equations over the scope; a sampled, inexact basis
    std::vector<Assertion> out;
    size_t budget = 12;
    for (Name a : scope) {
      for (Name b : scope) {
        if (!(a < b)) continue;
        out.push_back(Assertion::equations({{Term::name(a), Term::name(b)}}));
        if (out.size() >= budget) return out;
      }
    }
    return out;
  }
  bool extension_basis_exact() const override { return false; }

  bool accepts_symbol(const std::string& sym, size_t arity) const override {
    return crypto_signature_symbol(sym, arity);
  }

  Term random_term(Rng& rng, const NameSeq& pool) const override {
    return random_depth(rng, pool, 3);
  }
  Condition random_condition(Rng& rng, const NameSeq& pool) const override {
    return Condition::term_eq(random_term(rng, pool), random_term(rng, pool));
  }
  Assertion random_assertion(Rng& rng, const NameSeq& pool) const override {
    std::uniform_int_distribution<size_t> d(0, 2);
    size_t n = d(rng);
    std::vector<std::pair<Term, Term>> eqs;
    for (size_t i = 0; i < n; ++i)
      eqs.push_back({random_term(rng, pool), random_term(rng, pool)});
    return Assertion::equations(std::move(eqs));
  }
  Assertion equivalent_variant(const Assertion& a, Rng& rng) const override {
    if (a.eqs.empty()) return a;
    std::uniform_int_distribution<size_t> pick(0, a.eqs.size() - 1);
    const auto& e = a.eqs[pick(rng)];
    // pad with a congruence consequence of an existing equation
    std::vector<std::pair<Term, Term>> eqs = a.eqs;
    eqs.push_back({Term::app("hash", {e.first}), Term::app("hash", {e.second})});
    return Assertion::equations(std::move(eqs));
  }
  Assertion assertion_normal_form(const Assertion& a) const override {
    std::vector<std::pair<Term, Term>> eqs;
    for (const auto& [l, r] : a.eqs) {
      Term nl = crypto_normalize(l);
      Term nr = crypto_normalize(r);
      if (nl == nr) continue;
      eqs.push_back({nl, nr});
    }
    return Assertion::equations(std::move(eqs), a.kind);
  }

 private:
  Term random_depth(Rng& rng, const NameSeq& pool, int depth) const {
    std::uniform_int_distribution<int> d(0, 5);
    if (depth == 0 || d(rng) < 3) return random_name_term(rng, pool);
    static const std::pair<const char*, size_t> sig[] = {
        {"enc", 2}, {"dec", 2}, {"hash", 1}, {"pair", 2}, {"fst", 1},
        {"snd", 1}, {"pk", 1},  {"sk", 1},   {"sign", 2}, {"check", 3},
        {"f", 2},   {"g", 1},   {"enc", 3}};
    std::uniform_int_distribution<size_t> s(0, std::size(sig) - 1);
    auto [sym, arity] = sig[s(rng)];
    std::vector<Term> args;
    for (size_t i = 0; i < arity; ++i)
      args.push_back(random_depth(rng, pool, depth - 1));
    return Term::app(sym, std::move(args));
  }
};

// ---------------------------------------------------------------------

// Concurrent constraints over the fusion fragment: stores are fusion sets
// with an inconsistency marker `bot`; cons(Psi') holds when the composed
// store stays consistent. The absorbing bottom store entails every
// equality.
class ConstraintInstance : public Instance {
 public:
  std::string name() const override { return "constraint"; }

  Condition chan_eq(const Term& m, const Term& n) const override {
    return Condition::term_eq(m, n);
  }
  Assertion unit() const override {
    return Assertion::equations({}, AssertKind::Store);
  }
  Assertion compose(const Assertion& a, const Assertion& b) const override {
    if (a.bottom || b.bottom) return Assertion::store_bottom();
    std::vector<std::pair<Term, Term>> eqs = a.eqs;
    eqs.insert(eqs.end(), b.eqs.begin(), b.eqs.end());
    return Assertion::equations(std::move(eqs), AssertKind::Store);
  }
  bool entails(const Assertion& psi, const Condition& c) const override {
    if (c.kind == CondKind::Consistent) return !compose(psi, *c.inner).bottom;
    if (psi.bottom) return true;
    if (!c.lhs.is_name() || !c.rhs.is_name()) return false;
    return closure_of(psi).same(c.lhs.as_name(), c.rhs.as_name());
  }

  std::vector<Term> channel_candidates(const Term& m,
                                       const Assertion& psi) const override {
    std::vector<Term> out{m};
    if (!m.is_name() || psi.bottom) return out;
    NameUnionFind uf = closure_of(psi);
    for (Name n : support(psi))
      if (uf.same(m.as_name(), n) && !(Term::name(n) == m))
        out.push_back(Term::name(n));
    return out;
  }

  std::vector<Condition> condition_probe_basis(const Frame& f,
                                               const Frame& g) const override {
    std::vector<Condition> out;
    NameSet sup = combined_support(f, g);
    auto [x, y] = fresh_pair(sup);
    out.push_back(Condition::term_eq(Term::name(x), Term::name(y)));
    out.push_back(Condition::consistent(Assertion::store_bottom()));
    out.push_back(Condition::consistent(unit()));
    for (Name a : sup)
      for (Name b : sup)
        if (a < b) {
          out.push_back(Condition::term_eq(Term::name(a), Term::name(b)));
          out.push_back(Condition::consistent(Assertion::equations(
              {{Term::name(a), Term::name(b)}}, AssertKind::Store)));
        }
    return out;
  }
  bool probe_basis_exact() const override { return true; }

  std::vector<Assertion> assertion_extension_basis(
      const Assertion&, const NameSet& scope) const override {
    std::vector<Assertion> out;
    out.push_back(Assertion::store_bottom());
    for (Name a : scope)
      for (Name b : scope)
        if (a < b)
          out.push_back(Assertion::equations({{Term::name(a), Term::name(b)}},
                                             AssertKind::Store));
    return out;
  }
  bool extension_basis_exact() const override { return true; }

  Term random_term(Rng& rng, const NameSeq& pool) const override {
    return random_name_term(rng, pool);
  }
  Condition random_condition(Rng& rng, const NameSeq& pool) const override {
    std::uniform_int_distribution<int> d(0, 3);
    if (d(rng) == 0) {
      return Condition::consistent(random_assertion(rng, pool));
    }
    return Condition::term_eq(random_name_term(rng, pool),
                              random_name_term(rng, pool));
  }
  Assertion random_assertion(Rng& rng, const NameSeq& pool) const override {
    std::uniform_int_distribution<int> b(0, 9);
    if (b(rng) == 0) return Assertion::store_bottom();
    std::uniform_int_distribution<size_t> d(0, 3);
    size_t n = d(rng);
    std::vector<std::pair<Term, Term>> eqs;
    for (size_t i = 0; i < n; ++i)
      eqs.push_back({random_name_term(rng, pool), random_name_term(rng, pool)});
    return Assertion::equations(std::move(eqs), AssertKind::Store);
  }
  Assertion equivalent_variant(const Assertion& a, Rng& rng) const override {
    if (a.bottom) return a;
    NameUnionFind uf = closure_of(a);
    std::vector<std::pair<Term, Term>> eqs;
    for (const auto& [n, r] : uf.canonical_pairs())
      eqs.push_back({Term::name(n), Term::name(r)});
    std::uniform_int_distribution<int> d(0, 1);
    NameSet sup = support(a);
    if (d(rng) && !sup.empty()) {
      Name c = *sup.begin();
      eqs.push_back({Term::name(c), Term::name(c)});
    }
    return Assertion::equations(std::move(eqs), AssertKind::Store);
  }
  Assertion assertion_normal_form(const Assertion& a) const override {
    if (a.bottom) return Assertion::store_bottom();
    NameUnionFind uf = closure_of(a);
    std::vector<std::pair<Term, Term>> eqs;
    for (const auto& [n, r] : uf.canonical_pairs())
      eqs.push_back({Term::name(n), Term::name(r)});
    return Assertion::equations(std::move(eqs), AssertKind::Store);
  }
};

}  // namespace

InstancePtr pi_instance() { return std::make_shared<PiInstance>(); }
InstancePtr polyadic_pi_instance() { return std::make_shared<PolyadicPiInstance>(); }
InstancePtr poly_sync_instance() { return std::make_shared<PolySyncInstance>(); }
InstancePtr fusion_instance() { return std::make_shared<FusionInstance>(); }
InstancePtr constraint_instance() { return std::make_shared<ConstraintInstance>(); }
InstancePtr crypto_instance() { return std::make_shared<CryptoInstance>(); }
InstancePtr channel_pool_instance() { return std::make_shared<ChannelPoolInstance>(); }

InstancePtr make_instance(const std::string& key) {
  if (key == "pi") return pi_instance();
  if (key == "polyadic") return polyadic_pi_instance();
  if (key == "polysync") return poly_sync_instance();
  if (key == "fusion") return fusion_instance();
  if (key == "constraint") return constraint_instance();
  if (key == "crypto") return crypto_instance();
  if (key == "pool") return channel_pool_instance();
  throw std::runtime_error("unknown instance '" + key + "'");
}

std::vector<std::string> instance_keys() {
  return {"pi", "polyadic", "polysync", "fusion", "constraint", "crypto", "pool"};
}

}  // namespace psi
