#include "psi/semantics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace psi {

NameSet support(const Action& a) {
  switch (a.kind) {
    case Action::Kind::Tau:
      return {};
    case Action::Kind::Out:
    case Action::Kind::In: {
      NameSet s = support(a.subject);
      collect_support(a.object, s);
      return s;
    }
    case Action::Kind::InSchema: {
      NameSet s = support(a.subject);
      NameSet inner = support(a.object);
      inner = set_diff(inner, to_set(a.schema_vars));
      return set_union(s, inner);
    }
  }
  return {};
}

std::string print_action(const Action& a, const NameTable& names) {
  switch (a.kind) {
    case Action::Kind::Tau:
      return "tau";
    case Action::Kind::Out: {
      std::string out = print_term(a.subject, names) + "!";
      if (!a.opened.empty()) {
        out += "(new ";
        for (size_t i = 0; i < a.opened.size(); ++i) {
          if (i) out += ",";
          out += print_name(a.opened[i], names);
        }
        out += ")";
      }
      return out + print_term(a.object, names);
    }
    case Action::Kind::In:
      return print_term(a.subject, names) + "?" + print_term(a.object, names);
    case Action::Kind::InSchema: {
      std::string out = print_term(a.subject, names) + "?(\\";
      for (size_t i = 0; i < a.schema_vars.size(); ++i) {
        if (i) out += ",";
        out += print_name(a.schema_vars[i], names);
      }
      return out + ")" + print_term(a.object, names);
    }
  }
  return "";
}

namespace {

void key_term_ids(const Term& t, std::ostringstream& os) {
  if (t.is_name()) {
    os << "n" << t.as_name().id;
    return;
  }
  os << t.symbol() << "(";
  for (const Term& a : t.args()) {
    key_term_ids(a, os);
    os << ",";
  }
  os << ")";
}

}  // namespace

std::string residual_key(const Residual& r) {
  // Opened names bind jointly into object and derivative: rename them to
  // canonical ids above everything free, then serialize.
  std::ostringstream os;
  os << static_cast<int>(r.act.kind) << "|";
  Residual c = r;
  if (!r.act.opened.empty()) {
    NameSet freesup = support(r.act.subject);
    NameSet inner = support(r.act.object);
    inner = set_union(inner, support(r.deriv));
    inner = set_diff(inner, to_set(r.act.opened));
    freesup = set_union(freesup, inner);
    uint32_t base = 0;
    for (Name n : freesup) base = std::max(base, n.id);
    // also stay above the original opened ids so the swap is a renaming
    NameSeq fresh;
    NameSet avoid = freesup;
    for (Name n : r.act.opened) avoid.insert(n);
    uint32_t next = base + 1;
    for (size_t i = 0; i < r.act.opened.size(); ++i) {
      while (avoid.count(Name{next})) ++next;
      fresh.push_back(Name{next});
      avoid.insert(Name{next});
    }
    Permutation perm = Permutation::zip(r.act.opened, fresh);
    c.act.subject = apply_perm(perm, r.act.subject);
    c.act.object = apply_perm(perm, r.act.object);
    c.act.opened = fresh;
    c.deriv = apply_perm(perm, r.deriv);
  }
  if (c.act.kind != Action::Kind::Tau) {
    key_term_ids(c.act.subject, os);
    os << "<";
    for (Name n : c.act.opened) os << n.id << " ";
    os << ">";
    if (c.act.kind == Action::Kind::InSchema) {
      os << "\\";
      for (Name n : c.act.schema_vars) os << n.id << " ";
    }
    key_term_ids(c.act.object, os);
  }
  os << "=>" << canonical_key(c.deriv);
  return os.str();
}

bool alpha_equal(const Residual& a, const Residual& b) {
  return residual_key(a) == residual_key(b);
}

// ---------------------------------------------------------------------
// The derivation engine.

namespace {

struct Move {
  Residual res;
  std::string rule;
};

// A pending input: the In rule without a chosen object. `blocked` names
// come from enclosing Scope binders and sibling frame binders; they may
// not occur in the eventually received object.
struct InCap {
  Term subject;
  NameSeq vars;
  Term pattern;
  AgentPtr body;
  NameSet blocked;
  std::string rule;
};

struct Moves {
  std::vector<Move> concrete;
  std::vector<InCap> inputs;
};

struct Engine {
  const Instance& inst;
  int rep_bound;
  bool truncated = false;
  NameSet ambient;
  std::vector<Term> system_subjects;

  Name freshen() {
    Name f = fresh_name(ambient);
    ambient.insert(f);
    return f;
  }

  std::vector<Term> candidate_subjects(const Term& m, const Assertion& env) {
    std::vector<Term> cands = inst.channel_candidates(m, env);
    cands.insert(cands.end(), system_subjects.begin(), system_subjects.end());
    std::sort(cands.begin(), cands.end(), term_less);
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<Term> out;
    for (const Term& k : cands)
      if (inst.entails(env, inst.chan_eq(m, k))) out.push_back(k);
    return out;
  }

  Moves derive(const Assertion& env, const AgentPtr& p, int budget) {
    Moves out;
    switch (p->kind) {
      case AgentKind::Nil:
      case AgentKind::Assert:
        return out;

      case AgentKind::Output: {
        for (const Term& k : candidate_subjects(p->subj, env))
          out.concrete.push_back({{Action::out(k, {}, p->obj), p->body}, "out"});
        return out;
      }

      case AgentKind::Input: {
        std::vector<Term> subjects = candidate_subjects(p->subj, env);
        if (subjects.empty()) return out;
        // freshen the pattern variables once so later context wrapping
        // cannot capture
        NameSeq vars = p->vars;
        Term pattern = p->obj;
        AgentPtr body = p->body;
        std::vector<bool> clash(vars.size());
        for (size_t i = 0; i < vars.size(); ++i) {
          clash[i] = ambient.count(vars[i]) > 0;
          if (!clash[i]) ambient.insert(vars[i]);
        }
        for (size_t i = 0; i < vars.size(); ++i) {
          if (!clash[i]) continue;
          Name nv = freshen();
          Permutation sw = Permutation::single(vars[i], nv);
          pattern = apply_perm(sw, pattern);
          body = apply_perm(sw, body);
          vars[i] = nv;
        }
        for (const Term& k : subjects)
          out.inputs.push_back({k, vars, pattern, body, {}, "in"});
        return out;
      }

      case AgentKind::Case: {
        for (const auto& br : p->branches) {
          if (!inst.entails(env, br.cond)) continue;
          if (has_unguarded_assertion(br.body)) continue;  // inert branch
          Moves sub = derive(env, br.body, budget);
          for (Move& m : sub.concrete) {
            m.rule = "case";
            out.concrete.push_back(std::move(m));
          }
          for (InCap& c : sub.inputs) {
            c.rule = "case";
            out.inputs.push_back(std::move(c));
          }
        }
        return out;
      }

      case AgentKind::Restriction: {
        Name b = p->bound;
        AgentPtr body = p->body;
        NameSet envsup = support(env);
        if (ambient.count(b) || envsup.count(b)) {
          Name nb = freshen();
          body = apply_perm(Permutation::single(b, nb), body);
          b = nb;
        } else {
          ambient.insert(b);
        }
        Moves sub = derive(env, body, budget);
        for (Move& m : sub.concrete) {
          const Action& act = m.res.act;
          if (act.kind == Action::Kind::Tau) {
            out.concrete.push_back(
                {{Action::tau(), restriction(b, m.res.deriv)}, "scope"});
            continue;
          }
          NameSet subjsup = support(act.subject);
          if (subjsup.count(b)) continue;  // bound subject: no rule applies
          NameSet objsup = support(act.object);
          if (act.kind == Action::Kind::Out && objsup.count(b)) {
            // Open
            Action opened = act;
            opened.opened.push_back(b);
            out.concrete.push_back({{std::move(opened), m.res.deriv}, "open"});
            continue;
          }
          if (objsup.count(b)) continue;  // input object mentions the binder
          out.concrete.push_back(
              {{act, restriction(b, m.res.deriv)}, "scope"});
        }
        for (InCap& c : sub.inputs) {
          if (support(c.subject).count(b)) continue;
          c.blocked.insert(b);
          c.body = restriction(b, c.body);
          c.rule = "scope";
          out.inputs.push_back(std::move(c));
        }
        return out;
      }

      case AgentKind::Parallel: {
        NameSet avoid = set_union(ambient, support(env));
        Frame fl = frame_of(p->left, inst, avoid);
        for (Name n : fl.binders) ambient.insert(n);
        avoid = set_union(ambient, support(env));
        Frame fr = frame_of(p->right, inst, avoid);
        for (Name n : fr.binders) ambient.insert(n);

        NameSet bl = to_set(fl.binders);
        NameSet br = to_set(fr.binders);
        Assertion env_l = inst.compose(fr.assertion, env);
        Assertion env_r = inst.compose(fl.assertion, env);

        Moves ml = derive(env_l, p->left, budget);
        Moves mr = derive(env_r, p->right, budget);

        // Par (left moving): the sibling's frame binders may not appear
        // in the label.
        for (const Move& m : ml.concrete) {
          if (!disjoint(support(m.res.act), br)) continue;
          out.concrete.push_back(
              {{m.res.act, parallel(m.res.deriv, p->right)}, "par"});
        }
        for (const Move& m : mr.concrete) {
          if (!disjoint(support(m.res.act), bl)) continue;
          out.concrete.push_back(
              {{m.res.act, parallel(p->left, m.res.deriv)}, "par"});
        }
        for (const InCap& c : ml.inputs) {
          if (!disjoint(support(c.subject), br)) continue;
          InCap nc = c;
          nc.blocked = set_union(nc.blocked, br);
          nc.body = parallel(nc.body, p->right);
          nc.rule = "par";
          out.inputs.push_back(std::move(nc));
        }
        for (const InCap& c : mr.inputs) {
          if (!disjoint(support(c.subject), bl)) continue;
          InCap nc = c;
          nc.blocked = set_union(nc.blocked, bl);
          nc.body = parallel(p->left, nc.body);
          nc.rule = "par";
          out.inputs.push_back(std::move(nc));
        }

        // Com. The channel equivalence premise uses the full composition.
        Assertion env_c = inst.compose(env, inst.compose(fl.assertion, fr.assertion));
        auto communicate = [&](const Move& outm, const InCap& cap, bool out_left) {
          const Action& act = outm.res.act;
          if (act.kind != Action::Kind::Out) return;
          if (!inst.entails(env_c, inst.chan_eq(act.subject, cap.subject)))
            return;
          auto binding = inst.match_pattern(cap.vars, cap.pattern, act.object);
          if (!binding) return;
          if (!disjoint(support(act.object), cap.blocked)) return;
          AgentPtr receiver = substitute_agent(cap.body, cap.vars, *binding, inst);
          AgentPtr deriv = out_left ? parallel(outm.res.deriv, receiver)
                                    : parallel(receiver, outm.res.deriv);
          for (auto it = act.opened.rbegin(); it != act.opened.rend(); ++it)
            deriv = restriction(*it, deriv);
          out.concrete.push_back({{Action::tau(), deriv}, "com"});
        };
        for (const Move& m : ml.concrete)
          for (const InCap& c : mr.inputs) communicate(m, c, true);
        for (const Move& m : mr.concrete)
          for (const InCap& c : ml.inputs) communicate(m, c, false);
        return out;
      }

      case AgentKind::Replication: {
        if (has_unguarded_assertion(p->body)) return out;  // inert
        if (budget <= 0) {
          truncated = true;
          return out;
        }
        Moves sub = derive(env, parallel(p->body, p), budget - 1);
        for (Move& m : sub.concrete) {
          m.rule = "rep";
          out.concrete.push_back(std::move(m));
        }
        for (InCap& c : sub.inputs) {
          c.rule = "rep";
          out.inputs.push_back(std::move(c));
        }
        return out;
      }
    }
    return out;
  }
};

void collect_subjects(const AgentPtr& p, std::vector<Term>& out) {
  switch (p->kind) {
    case AgentKind::Output:
    case AgentKind::Input:
      out.push_back(p->subj);
      collect_subjects(p->body, out);
      return;
    case AgentKind::Case:
      for (const auto& b : p->branches) collect_subjects(b.body, out);
      return;
    case AgentKind::Restriction:
    case AgentKind::Replication:
      collect_subjects(p->body, out);
      return;
    case AgentKind::Parallel:
      collect_subjects(p->left, out);
      collect_subjects(p->right, out);
      return;
    default:
      return;
  }
}

// Opened names sorted by first occurrence in the object.
void canonical_opened(Action& act) {
  if (act.opened.size() < 2) return;
  std::vector<Name> order;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_name()) {
      order.push_back(t.as_name());
      return;
    }
    for (const Term& a : t.args()) walk(a);
  };
  walk(act.object);
  NameSeq sorted;
  NameSet opened = to_set(act.opened);
  for (Name n : order)
    if (opened.count(n) &&
        std::find(sorted.begin(), sorted.end(), n) == sorted.end())
      sorted.push_back(n);
  // names not occurring in the object keep their old relative order (they
  // cannot exist per the action invariant, but stay safe)
  for (Name n : act.opened)
    if (std::find(sorted.begin(), sorted.end(), n) == sorted.end())
      sorted.push_back(n);
  act.opened = std::move(sorted);
}

}  // namespace

TransitionsResult transitions(const Assertion& env, const AgentPtr& p,
                              const Instance& inst, const InputPolicy& policy,
                              int rep_bound) {
  Engine eng{inst, rep_bound};
  eng.ambient = set_union(support(env), support(p));
  for (const Term& c : policy.candidates) collect_support(c, eng.ambient);
  collect_subjects(p, eng.system_subjects);
  std::sort(eng.system_subjects.begin(), eng.system_subjects.end(), term_less);
  eng.system_subjects.erase(
      std::unique(eng.system_subjects.begin(), eng.system_subjects.end()),
      eng.system_subjects.end());

  Moves moves = eng.derive(env, p, rep_bound);

  std::vector<Transition> list;
  for (Move& m : moves.concrete) {
    canonical_opened(m.res.act);
    list.push_back({env, p, std::move(m.res), std::move(m.rule)});
  }
  if (policy.kind == InputPolicy::Kind::Candidates) {
    for (const InCap& cap : moves.inputs) {
      for (const Term& cand : policy.candidates) {
        auto binding = inst.match_pattern(cap.vars, cap.pattern, cand);
        if (!binding) continue;
        if (!disjoint(support(cand), cap.blocked)) continue;
        AgentPtr deriv = substitute_agent(cap.body, cap.vars, *binding, inst);
        list.push_back(
            {env, p, {Action::in(cap.subject, cand), deriv}, cap.rule});
      }
    }
  } else if (policy.kind == InputPolicy::Kind::SymbolicOnly) {
    for (const InCap& cap : moves.inputs) {
      Action a;
      a.kind = Action::Kind::InSchema;
      a.subject = cap.subject;
      a.object = cap.pattern;
      a.schema_vars = cap.vars;
      list.push_back({env, p, {std::move(a), cap.body}, cap.rule});
    }
  }

  // dedupe modulo alpha on residuals, then canonical deterministic order
  std::map<std::string, Transition> uniq;
  for (Transition& t : list) {
    std::string key = t.rule + "#" + residual_key(t.res);
    uniq.emplace(std::move(key), std::move(t));
  }
  TransitionsResult out;
  out.truncated = eng.truncated;
  for (auto& [k, t] : uniq) out.list.push_back(std::move(t));
  return out;
}

Trace run_trace(const Assertion& env, const AgentPtr& p, const Instance& inst,
                size_t steps, const InputPolicy& policy, Scheduler sched,
                uint64_t seed, int rep_bound) {
  Trace tr;
  tr.initial = p;
  AgentPtr cur = p;
  Rng rng(seed);
  for (size_t i = 0; i < steps; ++i) {
    TransitionsResult res = transitions(env, cur, inst, policy, rep_bound);
    std::vector<const Transition*> taus;
    for (const Transition& t : res.list)
      if (t.res.act.kind == Action::Kind::Tau) taus.push_back(&t);
    if (taus.empty()) {
      if (res.truncated) throw DepthExceeded(rep_bound);
      tr.quiescent = true;
      return tr;
    }
    const Transition* chosen = taus.front();
    if (sched == Scheduler::Random) {
      std::uniform_int_distribution<size_t> d(0, taus.size() - 1);
      chosen = taus[d(rng)];
    }
    tr.steps.push_back({chosen->res});
    cur = chosen->res.deriv;
  }
  return tr;
}

}  // namespace psi
