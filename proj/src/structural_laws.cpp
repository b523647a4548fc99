#include <algorithm>
#include <functional>

#include "psi/bisim.hpp"
#include "psi/parser.hpp"

namespace psi {

// ---------------------------------------------------------------------
// Random well-formed agents.

namespace {

Name pick(Rng& rng, const NameSeq& pool) {
  std::uniform_int_distribution<size_t> d(0, pool.size() - 1);
  return pool[d(rng)];
}

}  // namespace

AgentPtr random_agent(const Instance& inst, Rng& rng, const NameSeq& pool,
                      int depth, bool allow_assertions, bool allow_replication) {
  std::uniform_int_distribution<int> d(0, 9);
  int roll = depth <= 0 ? 0 : d(rng);
  switch (roll) {
    case 0:
    case 1:
      return nil();
    case 2:
    case 3: {
      Term subj = Term::name(pick(rng, pool));
      Term obj = inst.random_term(rng, pool);
      return output(subj, obj,
                    random_agent(inst, rng, pool, depth - 1, allow_assertions,
                                 allow_replication));
    }
    case 4: {
      // pattern (\x)x receives anything
      Term subj = Term::name(pick(rng, pool));
      NameSet avoid = to_set(pool);
      Name x = fresh_name(avoid);
      AgentPtr body = random_agent(inst, rng, pool, depth - 1, allow_assertions,
                                   allow_replication);
      return input(subj, {x}, Term::name(x), body);
    }
    case 5: {
      std::vector<CaseBranch> bs;
      std::uniform_int_distribution<size_t> nb(1, 2);
      size_t n = nb(rng);
      for (size_t i = 0; i < n; ++i)
        bs.push_back({inst.random_condition(rng, pool),
                      random_agent(inst, rng, pool, depth - 1, false, false)});
      return case_agent(std::move(bs));
    }
    case 6: {
      Name a = pick(rng, pool);
      return restriction(a, random_agent(inst, rng, pool, depth - 1,
                                         allow_assertions, allow_replication));
    }
    case 7:
      return parallel(random_agent(inst, rng, pool, depth - 1, allow_assertions,
                                   allow_replication),
                      random_agent(inst, rng, pool, depth - 1, allow_assertions,
                                   allow_replication));
    case 8:
      if (allow_assertions) return assertion_agent(inst.random_assertion(rng, pool));
      return nil();
    default:
      if (allow_replication)
        return replication(random_agent(inst, rng, pool, depth - 1, false, false));
      return output(Term::name(pick(rng, pool)), inst.random_term(rng, pool),
                    random_agent(inst, rng, pool, depth - 1, allow_assertions,
                                 allow_replication));
  }
}

SubstitutionSeq random_substitution_seq(const Instance& inst, Rng& rng,
                                        const NameSeq& pool, const NameSet& from) {
  SubstitutionSeq seq;
  std::uniform_int_distribution<size_t> steps(0, 2);
  size_t n = steps(rng);
  for (size_t i = 0; i < n; ++i) {
    NameSeq candidates(from.begin(), from.end());
    if (candidates.empty()) break;
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::uniform_int_distribution<size_t> cnt(1, std::min<size_t>(2, candidates.size()));
    size_t k = cnt(rng);
    SubstitutionStep step;
    step.names.assign(candidates.begin(), candidates.begin() + k);
    for (size_t j = 0; j < k; ++j) step.terms.push_back(inst.random_term(rng, pool));
    seq.push_back(std::move(step));
  }
  return seq;
}

AgentPtr apply_substitution_seq(const AgentPtr& p, const SubstitutionSeq& seq,
                                const Instance& inst) {
  AgentPtr cur = p;
  for (const SubstitutionStep& s : seq)
    cur = substitute_agent(cur, s.names, s.terms, inst);
  return cur;
}

// ---------------------------------------------------------------------
// The structural-law suite.

namespace {

struct LawInstance {
  AgentPtr lhs, rhs;
};

using LawMaker = std::function<LawInstance(const Instance&, Rng&, const NameSeq&)>;

Name fresh_for(const AgentPtr& p, const NameSeq& pool) {
  NameSet avoid = support(p);
  for (Name n : pool) avoid.insert(n);
  return fresh_name(avoid);
}

}  // namespace

std::vector<LawReport> check_structural_laws(const Instance& inst, Workspace& ws,
                                             size_t agents_per_law,
                                             size_t substs_per_agent,
                                             uint64_t seed,
                                             const GameConfig& cfg) {
  NameSeq pool;
  for (const char* s : {"a", "b", "c", "d"}) pool.push_back(ws.names.intern(s));
  Rng rng(seed);

  auto gen = [&](Rng& r) {
    return random_agent(inst, r, pool, 3, true, false);
  };
  auto gen_guarded = [&](Rng& r) {
    return random_agent(inst, r, pool, 3, false, false);
  };

  std::vector<std::pair<std::string, LawMaker>> laws;
  laws.push_back({"P ~ P | 0", [&](const Instance&, Rng& r, const NameSeq&) {
                    AgentPtr p = gen(r);
                    return LawInstance{p, parallel(p, nil())};
                  }});
  laws.push_back({"P | (Q | R) ~ (P | Q) | R",
                  [&](const Instance&, Rng& r, const NameSeq&) {
                    AgentPtr p = gen(r), q = gen(r), rr = gen(r);
                    return LawInstance{parallel(p, parallel(q, rr)),
                                       parallel(parallel(p, q), rr)};
                  }});
  laws.push_back({"P | Q ~ Q | P", [&](const Instance&, Rng& r, const NameSeq&) {
                    AgentPtr p = gen(r), q = gen(r);
                    return LawInstance{parallel(p, q), parallel(q, p)};
                  }});
  laws.push_back({"(new a)0 ~ 0", [&](const Instance&, Rng& r, const NameSeq& pl) {
                    Name a = pick(r, pl);
                    return LawInstance{restriction(a, nil()), nil()};
                  }});
  laws.push_back({"P | (new a)Q ~ (new a)(P | Q) if a # P",
                  [&](const Instance&, Rng& r, const NameSeq&) {
                    AgentPtr p = gen(r);
                    AgentPtr q = gen(r);
                    Name a = fresh_for(p, {});
                    return LawInstance{parallel(p, restriction(a, q)),
                                       restriction(a, parallel(p, q))};
                  }});
  laws.push_back({"M!N.(new a)P ~ (new a)M!N.P if a # M,N",
                  [&](const Instance& in, Rng& r, const NameSeq& pl) {
                    Term m = Term::name(pick(r, pl));
                    Term n = in.random_term(r, pl);
                    AgentPtr p = gen(r);
                    NameSet avoid = set_union(support(m), support(n));
                    avoid = set_union(avoid, to_set(pl));
                    Name a = fresh_name(avoid);
                    return LawInstance{output(m, n, restriction(a, p)),
                                       restriction(a, output(m, n, p))};
                  }});
  laws.push_back({"M?(\\x)N.(new a)P ~ (new a)M?(\\x)N.P if a # x,M,N",
                  [&](const Instance& in, Rng& r, const NameSeq& pl) {
                    (void)in;
                    Term m = Term::name(pick(r, pl));
                    NameSet avoid = to_set(pl);
                    Name x = fresh_name(avoid);
                    avoid.insert(x);
                    Name a = fresh_name(avoid);
                    AgentPtr p = gen(r);
                    return LawInstance{
                        input(m, {x}, Term::name(x), restriction(a, p)),
                        restriction(a, input(m, {x}, Term::name(x), p))};
                  }});
  laws.push_back({"case phi : (new a)P ~ (new a)case phi : P if a # phi",
                  [&](const Instance& in, Rng& r, const NameSeq& pl) {
                    Condition phi = in.random_condition(r, pl);
                    AgentPtr p = gen_guarded(r);
                    NameSet avoid = set_union(support(phi), to_set(pl));
                    Name a = fresh_name(avoid);
                    std::vector<CaseBranch> lhs{{phi, restriction(a, p)}};
                    std::vector<CaseBranch> rhs{{phi, p}};
                    return LawInstance{case_agent(std::move(lhs)),
                                       restriction(a, case_agent(std::move(rhs)))};
                  }});
  laws.push_back({"(new a)(new b)P ~ (new b)(new a)P",
                  [&](const Instance&, Rng& r, const NameSeq& pl) {
                    Name a = pick(r, pl);
                    Name b = pick(r, pl);
                    AgentPtr p = gen(r);
                    return LawInstance{restriction(a, restriction(b, p)),
                                       restriction(b, restriction(a, p))};
                  }});
  laws.push_back({"!P ~ P | !P", [&](const Instance&, Rng& r, const NameSeq&) {
                    AgentPtr p = gen_guarded(r);
                    return LawInstance{replication(p), parallel(p, replication(p))};
                  }});
  laws.push_back({"(new a)P ~ P if a # P",
                  [&](const Instance&, Rng& r, const NameSeq&) {
                    AgentPtr p = gen(r);
                    Name a = fresh_for(p, {});
                    return LawInstance{restriction(a, p), p};
                  }});

  std::vector<LawReport> reports;
  for (auto& [name, maker] : laws) {
    LawReport rep;
    rep.law = name;
    for (size_t i = 0; i < agents_per_law; ++i) {
      LawInstance li = maker(inst, rng, pool);
      NameSet from = set_union(support(li.lhs), support(li.rhs));
      for (size_t s = 0; s < substs_per_agent; ++s) {
        SubstitutionSeq seq =
            s == 0 ? SubstitutionSeq{}  // the identity sequence first
                   : random_substitution_seq(inst, rng, pool, from);
        AgentPtr lhs = apply_substitution_seq(li.lhs, seq, inst);
        AgentPtr rhs = apply_substitution_seq(li.rhs, seq, inst);
        Verdict v = bisimilar(inst.unit(), lhs, rhs, inst, cfg);
        ++rep.checked;
        if (v.positive()) {
          ++rep.positive;
        } else {
          rep.failures.push_back(name + " on " +
                                 print_agent(lhs, inst, ws.names) + " vs " +
                                 print_agent(rhs, inst, ws.names));
        }
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace psi
