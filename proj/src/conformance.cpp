#include "psi/conformance.hpp"

#include <json.hpp>

#include "psi/agent.hpp"

namespace psi {

std::string ConformanceReport::to_json() const {
  nlohmann::json j;
  j["instance"] = instance;
  j["pass"] = all_pass();
  nlohmann::json laws = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json lj;
    lj["law"] = r.law;
    lj["pass"] = r.pass;
    lj["informative"] = r.informative;
    lj["trials"] = r.trials;
    if (!r.pass) lj["counterexample"] = r.counterexample;
    laws.push_back(lj);
  }
  j["laws"] = laws;
  return j.dump(2);
}

bool assertion_equivalent(const Instance& inst, const Assertion& a,
                          const Assertion& b,
                          const std::vector<Condition>& probes) {
  for (const Condition& c : probes)
    if (inst.entails(a, c) != inst.entails(b, c)) return false;
  return true;
}

bool assertion_equivalent(const Instance& inst, const Assertion& a,
                          const Assertion& b) {
  return assertion_equivalent(
      inst, a, b, inst.condition_probe_basis(Frame::of(a), Frame::of(b)));
}

bool frame_equivalent(const Instance& inst, const Frame& f, const Frame& g) {
  for (const Condition& c : inst.condition_probe_basis(f, g))
    if (frame_entails(f, c, inst) != frame_entails(g, c, inst)) return false;
  return true;
}

namespace {

NameSeq conformance_pool(Workspace& ws) {
  NameSeq pool;
  for (const char* s : {"a", "b", "c", "d", "e", "fz"})
    pool.push_back(ws.names.intern(s));
  return pool;
}

struct Check {
  const Instance& inst;
  const NameTable& names;
  LawResult result;

  explicit Check(const Instance& i, const NameTable& nt, std::string law,
                 bool informative = false)
      : inst(i), names(nt) {
    result.law = std::move(law);
    result.informative = informative;
  }

  void fail(const std::string& witness) {
    if (result.pass) {
      result.pass = false;
      result.counterexample = witness;
    }
  }
  void count() { ++result.trials; }

  std::string show(const Assertion& a) const { return inst.print_assertion(a, names); }
  std::string show(const Condition& c) const { return inst.print_condition(c, names); }
  std::string show(const Term& t) const { return inst.print_term_text(t, names); }
};

}  // namespace

ConformanceReport check_requisites(const Instance& inst, Workspace& ws,
                                   size_t trials, uint64_t seed) {
  Rng rng(seed);
  NameSeq pool = conformance_pool(ws);
  const NameTable& nt = ws.names;

  Check sym(inst, nt, "Channel Symmetry");
  Check trans(inst, nt, "Channel Transitivity");
  Check compos(inst, nt, "Compositionality");
  Check ident(inst, nt, "Identity");
  Check assoc(inst, nt, "Associativity");
  Check commut(inst, nt, "Commutativity");
  Check weak(inst, nt, "Weakening (informative)", true);
  Check idem(inst, nt, "Idempotence (informative)", true);

  for (size_t i = 0; i < trials; ++i) {
    Assertion psi = inst.random_assertion(rng, pool);
    Term m = inst.random_term(rng, pool);
    Term n = inst.random_term(rng, pool);
    Term l = inst.random_term(rng, pool);

    // Symmetry. Bias towards entailed premises: also try m<->m style pairs.
    sym.count();
    if (inst.entails(psi, inst.chan_eq(m, n)) &&
        !inst.entails(psi, inst.chan_eq(n, m)))
      sym.fail(sym.show(psi) + " |- " + sym.show(inst.chan_eq(m, n)) +
               " but not the converse");

    trans.count();
    if (inst.entails(psi, inst.chan_eq(m, n)) &&
        inst.entails(psi, inst.chan_eq(n, l)) &&
        !inst.entails(psi, inst.chan_eq(m, l)))
      trans.fail(trans.show(psi) + " fails transitivity on " + trans.show(m) +
                 ", " + trans.show(n) + ", " + trans.show(l));

    Assertion psi2 = inst.equivalent_variant(psi, rng);
    Assertion psi3 = inst.random_assertion(rng, pool);
    compos.count();
    if (assertion_equivalent(inst, psi, psi2)) {
      if (!assertion_equivalent(inst, inst.compose(psi, psi3),
                                inst.compose(psi2, psi3)))
        compos.fail(compos.show(psi) + " ~ " + compos.show(psi2) +
                    " but composition with " + compos.show(psi3) + " differs");
    }

    ident.count();
    if (!assertion_equivalent(inst, inst.compose(psi, inst.unit()), psi))
      ident.fail(ident.show(psi) + " x 1 not equivalent to itself");

    assoc.count();
    {
      Assertion lhs = inst.compose(inst.compose(psi, psi2), psi3);
      Assertion rhs = inst.compose(psi, inst.compose(psi2, psi3));
      if (!assertion_equivalent(inst, lhs, rhs))
        assoc.fail("associativity fails on " + assoc.show(psi) + ", " +
                   assoc.show(psi2) + ", " + assoc.show(psi3));
    }

    commut.count();
    if (!assertion_equivalent(inst, inst.compose(psi, psi3),
                              inst.compose(psi3, psi)))
      commut.fail("commutativity fails on " + commut.show(psi) + ", " +
                  commut.show(psi3));

    weak.count();
    {
      Condition phi = inst.random_condition(rng, pool);
      if (inst.entails(psi, phi) && !inst.entails(inst.compose(psi, psi3), phi))
        weak.fail(weak.show(psi) + " |- " + weak.show(phi) +
                  " lost after composing " + weak.show(psi3));
    }

    idem.count();
    if (!assertion_equivalent(inst, inst.compose(psi, psi), psi))
      idem.fail("idempotence fails on " + idem.show(psi));
  }

  ConformanceReport rep;
  rep.instance = inst.name();
  rep.results = {sym.result,   trans.result, compos.result, ident.result,
                 assoc.result, commut.result, weak.result,  idem.result};
  return rep;
}

namespace {

// One nominal value category at a time: 0 = term, 1 = condition, 2 = assertion.
struct Value {
  int cat;
  Term t;
  Condition c;
  Assertion a;

  NameSet sup() const {
    switch (cat) {
      case 0:
        return support(t);
      case 1:
        return support(c);
      default:
        return support(a);
    }
  }
};

Value random_value(const Instance& inst, Rng& rng, const NameSeq& pool) {
  std::uniform_int_distribution<int> d(0, 2);
  Value v;
  v.cat = d(rng);
  switch (v.cat) {
    case 0:
      v.t = inst.random_term(rng, pool);
      break;
    case 1:
      v.c = inst.random_condition(rng, pool);
      break;
    default:
      v.a = inst.random_assertion(rng, pool);
      break;
  }
  return v;
}

Value subst_value(const Instance& inst, const Value& v, const NameSeq& xs,
                  const std::vector<Term>& ls) {
  Value r = v;
  switch (v.cat) {
    case 0:
      r.t = inst.subst_term(v.t, xs, ls);
      break;
    case 1:
      r.c = inst.subst_cond(v.c, xs, ls);
      break;
    default:
      r.a = inst.subst_assert(v.a, xs, ls);
      break;
  }
  return r;
}

Value perm_value(const Value& v, const Permutation& p) {
  Value r = v;
  switch (v.cat) {
    case 0:
      r.t = apply_perm(p, v.t);
      break;
    case 1:
      r.c = apply_perm(p, v.c);
      break;
    default:
      r.a = apply_perm(p, v.a);
      break;
  }
  return r;
}

bool value_equal(const Value& a, const Value& b) {
  if (a.cat != b.cat) return false;
  switch (a.cat) {
    case 0:
      return a.t == b.t;
    case 1:
      return a.c == b.c;
    default:
      return a.a == b.a;
  }
}

std::string show_value(const Instance& inst, const Value& v, const NameTable& nt) {
  switch (v.cat) {
    case 0:
      return inst.print_term_text(v.t, nt);
    case 1:
      return inst.print_condition(v.c, nt);
    default:
      return inst.print_assertion(v.a, nt);
  }
}

}  // namespace

ConformanceReport check_substitution_laws(const Instance& inst, Workspace& ws,
                                          size_t trials, uint64_t seed) {
  Rng rng(seed);
  NameSeq pool = conformance_pool(ws);
  const NameTable& nt = ws.names;

  Check law1(inst, nt, "Substitution Law 1 (names not lost)");
  Check law2(inst, nt, "Substitution Law 2 (alpha-renaming)");
  Check equi(inst, nt, "Substitution Equivariance");

  for (size_t i = 0; i < trials; ++i) {
    Value x = random_value(inst, rng, pool);
    NameSet sup = x.sup();
    if (sup.empty()) {
      // nothing to substitute for; still exercise equivariance
      Permutation p = Permutation::single(pool[0], pool[1]);
      equi.count();
      if (!value_equal(perm_value(x, p), perm_value(x, p))) equi.fail("impossible");
      continue;
    }
    // pick a duplicate-free subset of the support
    NameSeq candidates(sup.begin(), sup.end());
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::uniform_int_distribution<size_t> cnt(1, candidates.size());
    size_t k = cnt(rng);
    NameSeq xs(candidates.begin(), candidates.begin() + k);
    std::vector<Term> ls;
    for (size_t j = 0; j < k; ++j) ls.push_back(inst.random_term(rng, pool));

    Value sub = subst_value(inst, x, xs, ls);

    law1.count();
    {
      NameSet lsup;
      for (const Term& t : ls) collect_support(t, lsup);
      NameSet rsup = sub.sup();
      for (Name b : lsup) {
        if (!rsup.count(b)) {
          law1.fail("substituting into " + show_value(inst, x, nt) + " lost " +
                    print_name(b, nt));
          break;
        }
      }
    }

    law2.count();
    {
      NameSet avoid = set_union(sup, to_set(xs));
      for (const Term& t : ls) collect_support(t, avoid);
      NameSeq bs = fresh_names(k, avoid);
      Permutation p = Permutation::zip(bs, xs);
      Value swapped = perm_value(x, p);
      Value via = subst_value(inst, swapped, bs, ls);
      if (!value_equal(sub, via))
        law2.fail("law 2 fails on " + show_value(inst, x, nt));
    }

    equi.count();
    {
      Permutation p = Permutation::single(pool[0], pool[1]);
      Value lhs = perm_value(sub, p);
      NameSeq pxs = apply_perm(p, xs);
      std::vector<Term> pls;
      for (const Term& t : ls) pls.push_back(apply_perm(p, t));
      Value rhs = subst_value(inst, perm_value(x, p), pxs, pls);
      if (!value_equal(lhs, rhs))
        equi.fail("equivariance fails on " + show_value(inst, x, nt));
    }
  }

  ConformanceReport rep;
  rep.instance = inst.name();
  rep.results = {law1.result, law2.result, equi.result};
  return rep;
}

}  // namespace psi
