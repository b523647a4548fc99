#include "psi/agent.hpp"

#include <algorithm>
#include <sstream>

namespace psi {

namespace {
AgentPtr make(AgentNode n) { return std::make_shared<AgentNode>(std::move(n)); }
}  // namespace

AgentPtr nil() {
  static AgentPtr n = make(AgentNode{});
  return n;
}

AgentPtr output(Term subj, Term obj, AgentPtr body) {
  AgentNode n;
  n.kind = AgentKind::Output;
  n.subj = std::move(subj);
  n.obj = std::move(obj);
  n.body = std::move(body);
  return make(std::move(n));
}

AgentPtr input(Term subj, NameSeq vars, Term obj, AgentPtr body) {
  NameSet seen;
  NameSet objsup = support(obj);
  for (Name v : vars) {
    if (seen.count(v)) throw IllFormed("duplicate pattern variable");
    if (!objsup.count(v)) throw IllFormed("pattern variable not in object");
    seen.insert(v);
  }
  AgentNode n;
  n.kind = AgentKind::Input;
  n.subj = std::move(subj);
  n.obj = std::move(obj);
  n.vars = std::move(vars);
  n.body = std::move(body);
  return make(std::move(n));
}

AgentPtr case_agent(std::vector<CaseBranch> branches) {
  AgentNode n;
  n.kind = AgentKind::Case;
  n.branches = std::move(branches);
  return make(std::move(n));
}

AgentPtr restriction(Name bound, AgentPtr body) {
  AgentNode n;
  n.kind = AgentKind::Restriction;
  n.bound = bound;
  n.body = std::move(body);
  return make(std::move(n));
}

AgentPtr parallel(AgentPtr left, AgentPtr right) {
  AgentNode n;
  n.kind = AgentKind::Parallel;
  n.left = std::move(left);
  n.right = std::move(right);
  return make(std::move(n));
}

AgentPtr replication(AgentPtr body) {
  AgentNode n;
  n.kind = AgentKind::Replication;
  n.body = std::move(body);
  return make(std::move(n));
}

AgentPtr assertion_agent(Assertion a) {
  AgentNode n;
  n.kind = AgentKind::Assert;
  n.assertion = std::move(a);
  return make(std::move(n));
}

NameSet support(const AgentPtr& p) {
  switch (p->kind) {
    case AgentKind::Nil:
      return {};
    case AgentKind::Output: {
      NameSet s = support(p->subj);
      collect_support(p->obj, s);
      return set_union(s, support(p->body));
    }
    case AgentKind::Input: {
      NameSet inner = support(p->obj);
      inner = set_union(inner, support(p->body));
      inner = set_diff(inner, to_set(p->vars));
      return set_union(support(p->subj), inner);
    }
    case AgentKind::Case: {
      NameSet s;
      for (const auto& b : p->branches) {
        s = set_union(s, support(b.cond));
        s = set_union(s, support(b.body));
      }
      return s;
    }
    case AgentKind::Restriction: {
      NameSet s = support(p->body);
      s.erase(p->bound);
      return s;
    }
    case AgentKind::Parallel:
      return set_union(support(p->left), support(p->right));
    case AgentKind::Replication:
      return support(p->body);
    case AgentKind::Assert:
      return support(p->assertion);
  }
  return {};
}

AgentPtr apply_perm(const Permutation& perm, const AgentPtr& p) {
  if (perm.empty()) return p;
  switch (p->kind) {
    case AgentKind::Nil:
      return p;
    case AgentKind::Output:
      return output(apply_perm(perm, p->subj), apply_perm(perm, p->obj),
                    apply_perm(perm, p->body));
    case AgentKind::Input: {
      // swapping is total: binders move too
      AgentNode n;
      n.kind = AgentKind::Input;
      n.subj = apply_perm(perm, p->subj);
      n.obj = apply_perm(perm, p->obj);
      n.vars = apply_perm(perm, p->vars);
      n.body = apply_perm(perm, p->body);
      return make(std::move(n));
    }
    case AgentKind::Case: {
      std::vector<CaseBranch> bs;
      for (const auto& b : p->branches)
        bs.push_back({apply_perm(perm, b.cond), apply_perm(perm, b.body)});
      return case_agent(std::move(bs));
    }
    case AgentKind::Restriction:
      return restriction(perm.apply(p->bound), apply_perm(perm, p->body));
    case AgentKind::Parallel:
      return parallel(apply_perm(perm, p->left), apply_perm(perm, p->right));
    case AgentKind::Replication:
      return replication(apply_perm(perm, p->body));
    case AgentKind::Assert:
      return assertion_agent(apply_perm(perm, p->assertion));
  }
  return p;
}

bool has_unguarded_assertion(const AgentPtr& p) {
  switch (p->kind) {
    case AgentKind::Assert:
      return true;
    case AgentKind::Parallel:
      return has_unguarded_assertion(p->left) || has_unguarded_assertion(p->right);
    case AgentKind::Restriction:
    case AgentKind::Replication:
      return has_unguarded_assertion(p->body);
    case AgentKind::Case:
      return std::any_of(p->branches.begin(), p->branches.end(),
                         [](const CaseBranch& b) {
                           return has_unguarded_assertion(b.body);
                         });
    default:
      return false;  // Nil, and anything under a prefix is guarded
  }
}

bool well_formed(const AgentPtr& p) {
  switch (p->kind) {
    case AgentKind::Nil:
    case AgentKind::Assert:
      return true;
    case AgentKind::Output:
      return well_formed(p->body);
    case AgentKind::Input: {
      NameSet seen;
      NameSet objsup = support(p->obj);
      for (Name v : p->vars) {
        if (seen.count(v) || !objsup.count(v)) return false;
        seen.insert(v);
      }
      return well_formed(p->body);
    }
    case AgentKind::Case:
      return std::all_of(p->branches.begin(), p->branches.end(),
                         [](const CaseBranch& b) {
                           return !has_unguarded_assertion(b.body) &&
                                  well_formed(b.body);
                         });
    case AgentKind::Restriction:
      return well_formed(p->body);
    case AgentKind::Parallel:
      return well_formed(p->left) && well_formed(p->right);
    case AgentKind::Replication:
      return !has_unguarded_assertion(p->body) && well_formed(p->body);
  }
  return true;
}

// ---------------------------------------------------------------------
// Alpha-equivalence: binders on both sides are renamed to one shared
// fresh supply while descending, so leaves compare structurally.

namespace {

struct AlphaCtx {
  uint32_t next;
  std::vector<std::pair<Name, Name>> envA, envB;  // original -> common

  Name resolve(const std::vector<std::pair<Name, Name>>& env, Name n) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == n) return it->second;
    return n;
  }
  Term tr(const std::vector<std::pair<Name, Name>>& env, const Term& t) const {
    if (t.is_name()) return Term::name(resolve(env, t.as_name()));
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(tr(env, a));
    return Term::app(t.symbol(), std::move(args));
  }
  Assertion tr(const std::vector<std::pair<Name, Name>>& env, const Assertion& a) const {
    Assertion r = a;
    for (Term& t : r.elems) t = tr(env, t);
    for (auto& [l, rr] : r.eqs) {
      l = tr(env, l);
      rr = tr(env, rr);
    }
    r.canonicalize();
    return r;
  }
  Condition tr(const std::vector<std::pair<Name, Name>>& env, const Condition& c) const {
    if (c.kind == CondKind::Consistent) return Condition::consistent(tr(env, *c.inner));
    Condition r = c;
    r.lhs = tr(env, c.lhs);
    r.rhs = tr(env, c.rhs);
    return r;
  }
};

uint32_t max_id(const Term& t) {
  if (t.is_name()) return t.as_name().id;
  uint32_t m = 0;
  for (const Term& a : t.args()) m = std::max(m, max_id(a));
  return m;
}

uint32_t max_id(const Assertion& a) {
  uint32_t m = 0;
  for (const Term& t : a.elems) m = std::max(m, max_id(t));
  for (const auto& [l, r] : a.eqs) m = std::max({m, max_id(l), max_id(r)});
  return m;
}

uint32_t max_id(const Condition& c) {
  if (c.kind == CondKind::Consistent) return max_id(*c.inner);
  return std::max(max_id(c.lhs), max_id(c.rhs));
}

uint32_t max_id(const AgentPtr& p) {
  uint32_t m = 0;
  switch (p->kind) {
    case AgentKind::Nil:
      break;
    case AgentKind::Output:
      m = std::max({max_id(p->subj), max_id(p->obj), max_id(p->body)});
      break;
    case AgentKind::Input:
      m = std::max({max_id(p->subj), max_id(p->obj), max_id(p->body)});
      for (Name v : p->vars) m = std::max(m, v.id);
      break;
    case AgentKind::Case:
      for (const auto& b : p->branches)
        m = std::max({m, max_id(b.cond), max_id(b.body)});
      break;
    case AgentKind::Restriction:
      m = std::max(p->bound.id, max_id(p->body));
      break;
    case AgentKind::Parallel:
      m = std::max(max_id(p->left), max_id(p->right));
      break;
    case AgentKind::Replication:
      m = max_id(p->body);
      break;
    case AgentKind::Assert:
      m = max_id(p->assertion);
      break;
  }
  return m;
}

bool alpha_rec(const AgentPtr& a, const AgentPtr& b, AlphaCtx& cx) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case AgentKind::Nil:
      return true;
    case AgentKind::Output:
      return cx.tr(cx.envA, a->subj) == cx.tr(cx.envB, b->subj) &&
             cx.tr(cx.envA, a->obj) == cx.tr(cx.envB, b->obj) &&
             alpha_rec(a->body, b->body, cx);
    case AgentKind::Input: {
      if (a->vars.size() != b->vars.size()) return false;
      if (cx.tr(cx.envA, a->subj) != cx.tr(cx.envB, b->subj)) return false;
      size_t mark = cx.envA.size();
      for (size_t i = 0; i < a->vars.size(); ++i) {
        Name c{cx.next++};
        cx.envA.push_back({a->vars[i], c});
        cx.envB.push_back({b->vars[i], c});
      }
      bool ok = cx.tr(cx.envA, a->obj) == cx.tr(cx.envB, b->obj) &&
                alpha_rec(a->body, b->body, cx);
      cx.envA.resize(mark);
      cx.envB.resize(mark);
      return ok;
    }
    case AgentKind::Case: {
      if (a->branches.size() != b->branches.size()) return false;
      for (size_t i = 0; i < a->branches.size(); ++i) {
        if (cx.tr(cx.envA, a->branches[i].cond) != cx.tr(cx.envB, b->branches[i].cond))
          return false;
        if (!alpha_rec(a->branches[i].body, b->branches[i].body, cx)) return false;
      }
      return true;
    }
    case AgentKind::Restriction: {
      Name c{cx.next++};
      cx.envA.push_back({a->bound, c});
      cx.envB.push_back({b->bound, c});
      bool ok = alpha_rec(a->body, b->body, cx);
      cx.envA.pop_back();
      cx.envB.pop_back();
      return ok;
    }
    case AgentKind::Parallel:
      return alpha_rec(a->left, b->left, cx) && alpha_rec(a->right, b->right, cx);
    case AgentKind::Replication:
      return alpha_rec(a->body, b->body, cx);
    case AgentKind::Assert:
      return cx.tr(cx.envA, a->assertion) == cx.tr(cx.envB, b->assertion);
  }
  return false;
}

}  // namespace

bool alpha_equal(const AgentPtr& a, const AgentPtr& b) {
  AlphaCtx cx;
  cx.next = std::max(max_id(a), max_id(b)) + 1;
  return alpha_rec(a, b, cx);
}

// ---------------------------------------------------------------------
// Canonicalization: leftmost-innermost binder renumbering.

namespace {

size_t binder_count(const AgentPtr& p) {
  switch (p->kind) {
    case AgentKind::Nil:
    case AgentKind::Assert:
      return 0;
    case AgentKind::Output:
      return binder_count(p->body);
    case AgentKind::Input:
      return p->vars.size() + binder_count(p->body);
    case AgentKind::Case: {
      size_t n = 0;
      for (const auto& b : p->branches) n += binder_count(b.body);
      return n;
    }
    case AgentKind::Restriction:
      return 1 + binder_count(p->body);
    case AgentKind::Parallel:
      return binder_count(p->left) + binder_count(p->right);
    case AgentKind::Replication:
      return binder_count(p->body);
  }
  return 0;
}

struct CanonCtx {
  uint32_t base;  // first canonical id
  std::vector<std::pair<Name, Name>> env;

  Name resolve(Name n) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == n) return it->second;
    return n;
  }
  Term tr(const Term& t) const {
    if (t.is_name()) return Term::name(resolve(t.as_name()));
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(tr(a));
    return Term::app(t.symbol(), std::move(args));
  }
  Assertion tr(const Assertion& a) const {
    Assertion r = a;
    for (Term& t : r.elems) t = tr(t);
    for (auto& [l, rr] : r.eqs) {
      l = tr(l);
      rr = tr(rr);
    }
    r.canonicalize();
    return r;
  }
  Condition tr(const Condition& c) const {
    if (c.kind == CondKind::Consistent) return Condition::consistent(tr(*c.inner));
    Condition r = c;
    r.lhs = tr(c.lhs);
    r.rhs = tr(c.rhs);
    return r;
  }
};

// `next` is the number of binders already assigned below/left of here.
AgentPtr canon_rec(const AgentPtr& p, CanonCtx& cx, size_t next) {
  switch (p->kind) {
    case AgentKind::Nil:
      return p;
    case AgentKind::Output: {
      AgentPtr body = canon_rec(p->body, cx, next);
      return output(cx.tr(p->subj), cx.tr(p->obj), std::move(body));
    }
    case AgentKind::Input: {
      Term subj = cx.tr(p->subj);  // pattern vars do not bind the subject
      size_t inner = binder_count(p->body);
      size_t mark = cx.env.size();
      NameSeq nv;
      for (size_t i = 0; i < p->vars.size(); ++i) {
        Name c{static_cast<uint32_t>(cx.base + next + inner + i)};
        cx.env.push_back({p->vars[i], c});
        nv.push_back(c);
      }
      Term obj = cx.tr(p->obj);
      AgentPtr body = canon_rec(p->body, cx, next);
      cx.env.resize(mark);
      AgentNode n;
      n.kind = AgentKind::Input;
      n.subj = std::move(subj);
      n.obj = std::move(obj);
      n.vars = std::move(nv);
      n.body = std::move(body);
      return make(std::move(n));
    }
    case AgentKind::Case: {
      std::vector<CaseBranch> bs;
      size_t off = next;
      for (const auto& b : p->branches) {
        bs.push_back({cx.tr(b.cond), canon_rec(b.body, cx, off)});
        off += binder_count(b.body);
      }
      return case_agent(std::move(bs));
    }
    case AgentKind::Restriction: {
      size_t inner = binder_count(p->body);
      Name c{static_cast<uint32_t>(cx.base + next + inner)};
      cx.env.push_back({p->bound, c});
      AgentPtr body = canon_rec(p->body, cx, next);
      cx.env.pop_back();
      return restriction(c, std::move(body));
    }
    case AgentKind::Parallel: {
      AgentPtr l = canon_rec(p->left, cx, next);
      AgentPtr r = canon_rec(p->right, cx, next + binder_count(p->left));
      return parallel(std::move(l), std::move(r));
    }
    case AgentKind::Replication:
      return replication(canon_rec(p->body, cx, next));
    case AgentKind::Assert:
      return assertion_agent(cx.tr(p->assertion));
  }
  return p;
}

uint32_t max_free_id(const AgentPtr& p) {
  uint32_t m = 0;
  for (Name n : support(p)) m = std::max(m, n.id);
  return m;
}

void key_term(const Term& t, std::ostringstream& os) {
  if (t.is_name()) {
    os << "n" << t.as_name().id;
    return;
  }
  os << "f:" << t.symbol() << "(";
  for (const Term& a : t.args()) {
    key_term(a, os);
    os << ",";
  }
  os << ")";
}

void key_assertion(const Assertion& a, std::ostringstream& os) {
  os << "A" << static_cast<int>(a.kind) << (a.bottom ? "!" : "") << "{";
  for (const Term& t : a.elems) {
    key_term(t, os);
    os << ";";
  }
  for (const auto& [l, r] : a.eqs) {
    key_term(l, os);
    os << "=";
    key_term(r, os);
    os << ";";
  }
  os << "}";
}

void key_condition(const Condition& c, std::ostringstream& os) {
  os << "C" << static_cast<int>(c.kind);
  if (c.kind == CondKind::Consistent) {
    key_assertion(*c.inner, os);
    return;
  }
  key_term(c.lhs, os);
  os << "~";
  key_term(c.rhs, os);
}

void key_rec(const AgentPtr& p, std::ostringstream& os) {
  switch (p->kind) {
    case AgentKind::Nil:
      os << "0";
      return;
    case AgentKind::Output:
      os << "O[";
      key_term(p->subj, os);
      os << "!";
      key_term(p->obj, os);
      os << "]";
      key_rec(p->body, os);
      return;
    case AgentKind::Input:
      os << "I[";
      key_term(p->subj, os);
      os << "?";
      for (Name v : p->vars) os << "n" << v.id << " ";
      os << ":";
      key_term(p->obj, os);
      os << "]";
      key_rec(p->body, os);
      return;
    case AgentKind::Case:
      os << "K(";
      for (const auto& b : p->branches) {
        key_condition(b.cond, os);
        os << ">";
        key_rec(b.body, os);
        os << "[]";
      }
      os << ")";
      return;
    case AgentKind::Restriction:
      os << "R[n" << p->bound.id << "]";
      key_rec(p->body, os);
      return;
    case AgentKind::Parallel:
      os << "P(";
      key_rec(p->left, os);
      os << "|";
      key_rec(p->right, os);
      os << ")";
      return;
    case AgentKind::Replication:
      os << "!";
      key_rec(p->body, os);
      return;
    case AgentKind::Assert:
      key_assertion(p->assertion, os);
      return;
  }
}

}  // namespace

AgentPtr canonicalize(const AgentPtr& p) {
  CanonCtx cx;
  cx.base = max_free_id(p) + 1;
  return canon_rec(p, cx, 0);
}

std::string canonical_key(const AgentPtr& p) {
  std::ostringstream os;
  key_rec(canonicalize(p), os);
  return os.str();
}

// ---------------------------------------------------------------------
// Substitution.

namespace {

// Renames the binders in `vars` that clash with `avoid`, applying the same
// swaps to the carried terms/body.
struct BinderRename {
  NameSeq vars;
  std::vector<std::pair<Name, Name>> renames;
};

BinderRename rename_clashing(const NameSeq& vars, const NameSet& avoid,
                             const NameSet& occupied) {
  BinderRename out;
  NameSet taken = set_union(avoid, occupied);
  for (Name v : vars) taken.insert(v);
  for (Name v : vars) {
    if (avoid.count(v)) {
      Name nv = fresh_name(taken);
      taken.insert(nv);
      out.renames.push_back({v, nv});
      out.vars.push_back(nv);
    } else {
      out.vars.push_back(v);
    }
  }
  return out;
}

template <typename T>
T apply_renames(const std::vector<std::pair<Name, Name>>& rs, T v) {
  for (const auto& [x, y] : rs) v = apply_perm(Permutation::single(x, y), v);
  return v;
}

}  // namespace

AgentPtr substitute_agent(const AgentPtr& p, const NameSeq& xs,
                          const std::vector<Term>& ls, const Instance& inst) {
  if (xs.size() != ls.size()) throw ArityMismatch("substitution arity mismatch");
  {
    NameSet seen;
    for (Name x : xs) {
      if (seen.count(x)) throw ArityMismatch("duplicate substituted name");
      seen.insert(x);
    }
  }
  if (xs.empty()) return p;

  NameSet clash = to_set(xs);
  for (const Term& l : ls) collect_support(l, clash);

  switch (p->kind) {
    case AgentKind::Nil:
      return p;
    case AgentKind::Output:
      return output(inst.subst_term(p->subj, xs, ls), inst.subst_term(p->obj, xs, ls),
                    substitute_agent(p->body, xs, ls, inst));
    case AgentKind::Input: {
      NameSet occupied = set_union(support(p->obj), support(p->body));
      BinderRename br = rename_clashing(p->vars, clash, occupied);
      Term obj = apply_renames(br.renames, p->obj);
      AgentPtr body = p->body;
      for (const auto& [x, y] : br.renames)
        body = apply_perm(Permutation::single(x, y), body);
      return input(inst.subst_term(p->subj, xs, ls), br.vars,
                   inst.subst_term(obj, xs, ls),
                   substitute_agent(body, xs, ls, inst));
    }
    case AgentKind::Case: {
      std::vector<CaseBranch> bs;
      for (const auto& b : p->branches)
        bs.push_back({inst.subst_cond(b.cond, xs, ls),
                      substitute_agent(b.body, xs, ls, inst)});
      return case_agent(std::move(bs));
    }
    case AgentKind::Restriction: {
      BinderRename br = rename_clashing({p->bound}, clash, support(p->body));
      AgentPtr body = p->body;
      for (const auto& [x, y] : br.renames)
        body = apply_perm(Permutation::single(x, y), body);
      return restriction(br.vars[0], substitute_agent(body, xs, ls, inst));
    }
    case AgentKind::Parallel:
      return parallel(substitute_agent(p->left, xs, ls, inst),
                      substitute_agent(p->right, xs, ls, inst));
    case AgentKind::Replication:
      return replication(substitute_agent(p->body, xs, ls, inst));
    case AgentKind::Assert:
      return assertion_agent(inst.subst_assert(p->assertion, xs, ls));
  }
  return p;
}

// ---------------------------------------------------------------------
// Frames of agents.

Frame frame_of(const AgentPtr& p, const Instance& inst, const NameSet& avoid) {
  switch (p->kind) {
    case AgentKind::Assert:
      return Frame::of(p->assertion);
    case AgentKind::Parallel: {
      Frame fl = frame_of(p->left, inst, avoid);
      NameSet avoid2 = set_union(avoid, set_union(support(fl.assertion), to_set(fl.binders)));
      Frame fr = frame_of(p->right, inst, avoid2);
      return frame_compose(fl, fr, inst);
    }
    case AgentKind::Restriction: {
      Frame f = frame_of(p->body, inst, avoid);
      // (nu b)F: prepend, renaming the inner binders if b collides
      NameSeq bs;
      bs.push_back(p->bound);
      Frame inner = freshen(f, set_union(avoid, NameSet{p->bound}));
      bs.insert(bs.end(), inner.binders.begin(), inner.binders.end());
      return Frame{std::move(bs), inner.assertion};
    }
    default:
      return Frame::of(inst.unit());
  }
}

Frame frame_compose(const Frame& f, const Frame& g, const Instance& inst) {
  return frame_compose_with(f, g, [&](const Assertion& a, const Assertion& b) {
    return inst.compose(a, b);
  });
}

bool frame_entails(const Frame& f, const Condition& c, const Instance& inst) {
  Frame ff = freshen(f, support(c));
  return inst.entails(ff.assertion, c);
}

}  // namespace psi
