#include "psi/rewrite.hpp"

#include <algorithm>
#include <map>

namespace psi {

namespace {

bool is_app(const Term& t, const char* sym, size_t arity) {
  return !t.is_name() && t.symbol() == sym && t.args().size() == arity;
}

// One root-level rewrite step, or nullopt when the root is in normal form.
std::optional<Term> root_step(const Term& t) {
  if (is_app(t, "dec", 2)) {
    const Term& c = t.args()[0];
    const Term& k = t.args()[1];
    if (is_app(c, "enc", 2) && c.args()[1] == k) return c.args()[0];
    if (is_app(c, "enc", 2) && is_app(c.args()[1], "pk", 1) && is_app(k, "sk", 1) &&
        c.args()[1].args()[0] == k.args()[0])
      return c.args()[0];
    if (is_app(c, "enc", 3) && is_app(c.args()[1], "pk", 1) && is_app(k, "sk", 1) &&
        c.args()[1].args()[0] == k.args()[0])
      return c.args()[0];
  }
  if (is_app(t, "check", 3)) {
    const Term& x = t.args()[0];
    const Term& s = t.args()[1];
    const Term& p = t.args()[2];
    if (is_app(s, "sign", 2) && s.args()[0] == x && is_app(s.args()[1], "sk", 1) &&
        is_app(p, "pk", 1) && s.args()[1].args()[0] == p.args()[0])
      return Term::app("ok", {});
  }
  if (is_app(t, "fst", 1) && is_app(t.args()[0], "pair", 2))
    return t.args()[0].args()[0];
  if (is_app(t, "snd", 1) && is_app(t.args()[0], "pair", 2))
    return t.args()[0].args()[1];
  if (is_app(t, "f", 2) && is_app(t.args()[1], "g", 1)) {
    const Term& a = t.args()[0];
    const Term& b = t.args()[1].args()[0];
    if (term_less(b, a))
      return Term::app("f", {b, Term::app("g", {a})});
  }
  return std::nullopt;
}

}  // namespace

Term crypto_normalize(const Term& t) {
  if (t.is_name()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(crypto_normalize(a));
  Term cur = Term::app(t.symbol(), std::move(args));
  while (auto r = root_step(cur)) cur = crypto_normalize(*r);
  return cur;
}

namespace {

// Collects positions (paths) of redexes in t.
void redex_positions(const Term& t, std::vector<size_t>& path,
                     std::vector<std::vector<size_t>>& out) {
  if (t.is_name()) return;
  if (root_step(t)) out.push_back(path);
  for (size_t i = 0; i < t.args().size(); ++i) {
    path.push_back(i);
    redex_positions(t.args()[i], path, out);
    path.pop_back();
  }
}

Term rewrite_at(const Term& t, const std::vector<size_t>& path, size_t depth) {
  if (depth == path.size()) {
    auto r = root_step(t);
    return r ? *r : t;
  }
  std::vector<Term> args = t.args();
  args[path[depth]] = rewrite_at(args[path[depth]], path, depth + 1);
  return Term::app(t.symbol(), std::move(args));
}

}  // namespace

Term crypto_normalize_random(const Term& t, Rng& rng) {
  Term cur = t;
  while (true) {
    std::vector<std::vector<size_t>> redexes;
    std::vector<size_t> path;
    redex_positions(cur, path, redexes);
    if (redexes.empty()) return cur;
    std::uniform_int_distribution<size_t> pick(0, redexes.size() - 1);
    cur = rewrite_at(cur, redexes[pick(rng)], 0);
  }
}

bool crypto_signature_symbol(const std::string& sym, size_t arity) {
  static const std::pair<const char*, size_t> sig[] = {
      {"enc", 2}, {"enc", 3}, {"dec", 2},  {"hash", 1}, {"pair", 2}, {"fst", 1},
      {"snd", 1}, {"pk", 1},  {"sk", 1},   {"sign", 2}, {"check", 3}, {"ok", 0},
      {"f", 2},   {"g", 1}};
  for (const auto& [s, a] : sig)
    if (sym == s && arity == a) return true;
  // tupling symbols t1, t2, ...
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

void collect_subterms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  if (t.is_name()) return;
  for (const Term& a : t.args()) collect_subterms(a, out);
}

// ---------------------------------------------------------------------
// Ground congruence closure modulo the rewrite theory. Classic
// rebuild-and-normalize loop over a finite, shrinking-representative
// universe; adequate at desk scale.

namespace {

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return term_less(a, b); }
};

struct Closure {
  std::vector<Term> terms;
  std::map<Term, size_t, TermLess> index;
  std::vector<size_t> parent;

  size_t root(size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(size_t a, size_t b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  size_t add(const Term& t) {
    auto it = index.find(t);
    if (it != index.end()) return it->second;
    size_t id = terms.size();
    terms.push_back(t);
    index.emplace(t, id);
    parent.push_back(id);
    if (!t.is_name())
      for (const Term& a : t.args()) add(a);
    return id;
  }
  // smallest term in i's class
  Term representative(size_t i) {
    size_t r = root(i);
    Term best = terms[r];
    for (size_t j = 0; j < terms.size(); ++j)
      if (root(j) == r && term_less(terms[j], best)) best = terms[j];
    return best;
  }
};

}  // namespace

bool crypto_entails_eq(const std::vector<std::pair<Term, Term>>& eqs,
                       const Term& m, const Term& n) {
  Term nm = crypto_normalize(m);
  Term nn = crypto_normalize(n);
  if (nm == nn) return true;
  if (eqs.empty()) return false;

  Closure cl;
  size_t im = cl.add(nm);
  size_t in = cl.add(nn);
  for (const auto& [l, r] : eqs)
    cl.unite(cl.add(crypto_normalize(l)), cl.add(crypto_normalize(r)));

  const size_t kMaxRounds = 64;
  for (size_t round = 0; round < kMaxRounds; ++round) {
    bool changed = false;
    // congruence: same symbol, pairwise equal argument classes
    size_t sz = cl.terms.size();
    for (size_t i = 0; i < sz; ++i) {
      if (cl.terms[i].is_name()) continue;
      for (size_t j = i + 1; j < sz; ++j) {
        if (cl.terms[j].is_name()) continue;
        if (cl.root(i) == cl.root(j)) continue;
        const Term& a = cl.terms[i];
        const Term& b = cl.terms[j];
        if (a.symbol() != b.symbol() || a.args().size() != b.args().size()) continue;
        bool all = true;
        for (size_t k = 0; k < a.args().size() && all; ++k) {
          size_t ia = cl.index.at(a.args()[k]);
          size_t ib = cl.index.at(b.args()[k]);
          all = cl.root(ia) == cl.root(ib);
        }
        if (all) {
          cl.unite(i, j);
          changed = true;
        }
      }
    }
    // rebuild each term from class representatives and re-normalize
    for (size_t i = 0; i < sz; ++i) {
      const Term& t = cl.terms[i];
      if (t.is_name()) continue;
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args())
        args.push_back(cl.representative(cl.index.at(a)));
      Term rebuilt = crypto_normalize(Term::app(t.symbol(), std::move(args)));
      size_t id = cl.add(rebuilt);
      if (cl.root(id) != cl.root(i)) {
        cl.unite(id, i);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return cl.root(im) == cl.root(in);
}

}  // namespace psi
