#include "psi/bisim.hpp"

#include <json.hpp>
#include <map>
#include <set>

#include "psi/conformance.hpp"
#include "psi/parser.hpp"

namespace psi {

namespace {

enum class Tri { True, False, Unknown };

void collect_objects(const AgentPtr& p, std::vector<Term>& out) {
  switch (p->kind) {
    case AgentKind::Output:
      out.push_back(p->obj);
      collect_objects(p->body, out);
      return;
    case AgentKind::Input:
      collect_objects(p->body, out);
      return;
    case AgentKind::Case:
      for (const auto& b : p->branches) collect_objects(b.body, out);
      return;
    case AgentKind::Restriction:
    case AgentKind::Replication:
      collect_objects(p->body, out);
      return;
    case AgentKind::Parallel:
      collect_objects(p->left, out);
      collect_objects(p->right, out);
      return;
    default:
      return;
  }
}

std::vector<Term> default_candidates(const Assertion& env, const AgentPtr& p,
                                     const AgentPtr& q, Name fresh) {
  std::vector<Term> cands;
  collect_objects(p, cands);
  collect_objects(q, cands);
  NameSet names = set_union(support(env), set_union(support(p), support(q)));
  for (Name n : names) cands.push_back(Term::name(n));
  cands.push_back(Term::name(fresh));
  std::sort(cands.begin(), cands.end(), term_less);
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

// Defender enumeration gets extra unfolding budget so a replicated
// challenger move can be answered by the identical residual one unfold
// deeper.
constexpr int kDefenderSlack = 2;

struct Game {
  const Instance& inst;
  GameConfig cfg;
  bool context_mode = false;
  InputPolicy policy;
  Name game_fresh{0};

  std::map<std::string, Tri> status;
  std::map<std::string, WitnessPtr> refuted;
  std::set<std::string> known_unknown;
  size_t new_refutations = 0;
  size_t new_unknowns = 0;
  bool rep_bounded = false;
  bool depth_exceeded = false;

  std::string key(const Assertion& env, const AgentPtr& p, const AgentPtr& q) {
    Assertion n = inst.assertion_normal_form(env);
    return serialize_ids(n) + "#" + canonical_key(p) + "#" + canonical_key(q);
  }

  bool static_equivalent(const Assertion& env, const AgentPtr& p,
                         const AgentPtr& q) {
    Frame envf = Frame::of(env);
    Frame fp = frame_compose(envf, frame_of(p, inst, support(env)), inst);
    Frame fq = frame_compose(envf, frame_of(q, inst, support(env)), inst);
    return frame_equivalent(inst, fp, fq);
  }

  // Matches a challenger residual against defender transitions: actions
  // must agree up to joint renaming of opened names; returns the
  // correspondingly renamed defender derivatives.
  std::vector<AgentPtr> matching_replies(const Residual& move,
                                         const std::vector<Transition>& defender) {
    std::vector<AgentPtr> out;
    for (const Transition& t : defender) {
      const Action& a = move.act;
      const Action& b = t.res.act;
      if (a.kind != b.kind) continue;
      if (a.kind == Action::Kind::Tau) {
        out.push_back(t.res.deriv);
        continue;
      }
      if (!(a.subject == b.subject)) continue;
      if (a.kind == Action::Kind::In) {
        if (a.object == b.object) out.push_back(t.res.deriv);
        continue;
      }
      // output: align opened names positionally (both sides are ordered
      // by first occurrence in the object)
      if (a.opened.size() != b.opened.size()) continue;
      Permutation perm = Permutation::zip(b.opened, a.opened);
      if (!(apply_perm(perm, b.object) == a.object)) continue;
      out.push_back(apply_perm(perm, t.res.deriv));
    }
    return out;
  }

  Tri check(const Assertion& env, const AgentPtr& p, const AgentPtr& q,
            size_t depth, WitnessPtr* wit) {
    if (alpha_equal(p, q)) return Tri::True;
    std::string k = key(env, p, q);
    if (auto it = refuted.find(k); it != refuted.end()) {
      *wit = it->second;
      return Tri::False;
    }
    if (known_unknown.count(k)) return Tri::Unknown;
    if (auto it = status.find(k); it != status.end()) {
      if (it->second == Tri::Unknown) return Tri::Unknown;
      return Tri::True;  // settled or coinductively assumed
    }
    if (depth >= cfg.max_depth || status.size() >= cfg.max_states) {
      depth_exceeded = true;
      return Tri::Unknown;
    }
    status[k] = Tri::True;  // assume while exploring
    WitnessPtr w;
    Tri r = clauses(env, p, q, depth, &w);
    if (r == Tri::False) {
      status[k] = Tri::False;
      refuted[k] = w;
      ++new_refutations;
      *wit = w;
    } else if (r == Tri::Unknown) {
      // earlier conclusions may have leaned on the in-progress assumption
      status[k] = Tri::Unknown;
      known_unknown.insert(k);
      ++new_unknowns;
    } else {
      status[k] = r;
    }
    return r;
  }

  Tri clauses(const Assertion& env, const AgentPtr& p, const AgentPtr& q,
              size_t depth, WitnessPtr* wit) {
    // clause 1: static equivalence
    if (!static_equivalent(env, p, q)) {
      auto w = std::make_shared<Witness>();
      w->kind = Witness::Kind::StaticFail;
      w->env = env;
      w->left = p;
      w->right = q;
      *wit = w;
      return Tri::False;
    }

    bool unknown = false;

    // clause 4, in both directions per clause 2
    for (bool left_moves : {true, false}) {
      const AgentPtr& challenger = left_moves ? p : q;
      const AgentPtr& defender = left_moves ? q : p;
      TransitionsResult tc =
          transitions(env, challenger, inst, policy, cfg.rep_bound);
      TransitionsResult td = transitions(env, defender, inst, policy,
                                         cfg.rep_bound + kDefenderSlack);
      if (tc.truncated || td.truncated) rep_bounded = true;
      for (const Transition& move : tc.list) {
        std::vector<AgentPtr> replies = matching_replies(move.res, td.list);
        if (replies.empty()) {
          if (td.truncated) {
            // a deeper unfold could still answer; stay agnostic
            unknown = true;
            continue;
          }
          auto w = std::make_shared<Witness>();
          w->kind = Witness::Kind::UnmatchedMove;
          w->env = env;
          w->left = p;
          w->right = q;
          w->mover_left = left_moves;
          w->action = move.res.act;
          w->deriv = move.res.deriv;
          *wit = w;
          return Tri::False;
        }
        std::vector<std::pair<AgentPtr, WitnessPtr>> failed;
        bool some_true = false;
        bool some_unknown = false;
        for (const AgentPtr& reply : replies) {
          WitnessPtr sub;
          AgentPtr dp = left_moves ? move.res.deriv : reply;
          AgentPtr dq = left_moves ? reply : move.res.deriv;
          Tri r = check(env, dp, dq, depth + 1, &sub);
          if (r == Tri::True) {
            some_true = true;
            break;
          }
          if (r == Tri::Unknown)
            some_unknown = true;
          else
            failed.push_back({reply, sub});
        }
        if (some_true) continue;
        if (some_unknown || td.truncated) {
          unknown = true;
          continue;
        }
        auto w = std::make_shared<Witness>();
        w->kind = Witness::Kind::UnmatchedMove;
        w->env = env;
        w->left = p;
        w->right = q;
        w->mover_left = left_moves;
        w->action = move.res.act;
        w->deriv = move.res.deriv;
        w->replies = std::move(failed);
        *wit = w;
        return Tri::False;
      }
    }

    // clause 3: extension of arbitrary (or contextual) assertion
    NameSet scope = set_union(support(env), set_union(support(p), support(q)));
    scope.insert(game_fresh);
    for (const Assertion& ext : inst.assertion_extension_basis(env, scope)) {
      WitnessPtr sub;
      Tri r;
      if (context_mode) {
        AgentPtr wp = parallel(assertion_agent(ext), p);
        AgentPtr wq = parallel(assertion_agent(ext), q);
        r = check(env, wp, wq, depth + 1, &sub);
      } else {
        Assertion env2 = inst.compose(env, ext);
        r = check(env2, p, q, depth + 1, &sub);
      }
      if (r == Tri::False) {
        auto w = std::make_shared<Witness>();
        w->kind = Witness::Kind::ExtendFail;
        w->env = env;
        w->left = p;
        w->right = q;
        w->extension = ext;
        w->inner = sub;
        *wit = w;
        return Tri::False;
      }
      if (r == Tri::Unknown) unknown = true;
    }

    return unknown ? Tri::Unknown : Tri::True;
  }
};

Verdict run_game(const Assertion& env, const AgentPtr& p, const AgentPtr& q,
                 const Instance& inst, const GameConfig& cfg, bool context_mode) {
  Game game{inst, cfg};
  game.context_mode = context_mode;
  NameSet all = set_union(support(env), set_union(support(p), support(q)));
  for (const Term& c : cfg.candidates) collect_support(c, all);
  game.game_fresh = fresh_name(all);
  std::vector<Term> cands = cfg.candidates;
  if (cands.empty()) cands = default_candidates(env, p, q, game.game_fresh);
  game.policy = InputPolicy::with_candidates(std::move(cands));

  Verdict v;
  WitnessPtr wit;
  // Refutations invalidate coinductive assumptions made before them, so
  // rerun with the refuted set pinned until a round settles.
  while (true) {
    game.status.clear();
    game.new_refutations = 0;
    game.new_unknowns = 0;
    game.depth_exceeded = false;
    Tri r = game.check(env, p, q, 0, &wit);
    v.states_explored = std::max(v.states_explored, game.status.size());
    if (r == Tri::False) {
      v.kind = Verdict::Kind::NotBisimilar;
      v.witness = wit;
      break;
    }
    if (game.new_refutations == 0 && game.new_unknowns == 0) {
      if (r == Tri::True) {
        v.kind = Verdict::Kind::Bisimilar;
      } else {
        v.kind = Verdict::Kind::Inconclusive;
        v.reason = game.depth_exceeded ? "depth or state bound exceeded"
                                       : "replication bound reached";
      }
      break;
    }
  }
  v.bases_exact = inst.probe_basis_exact() && inst.extension_basis_exact();
  v.rep_bounded = game.rep_bounded;
  return v;
}

}  // namespace

Verdict bisimilar(const Assertion& env, const AgentPtr& p, const AgentPtr& q,
                  const Instance& inst, const GameConfig& cfg) {
  return run_game(env, p, q, inst, cfg, false);
}

Verdict context_bisimilar(const AgentPtr& p, const AgentPtr& q,
                          const Instance& inst, const GameConfig& cfg) {
  return run_game(inst.unit(), p, q, inst, cfg, true);
}

// ---------------------------------------------------------------------
// Witness replay.

namespace {

bool replay(const WitnessPtr& w, const Instance& inst, const GameConfig& cfg,
            const InputPolicy& policy) {
  switch (w->kind) {
    case Witness::Kind::StaticFail: {
      Frame envf = Frame::of(w->env);
      Frame fp = frame_compose(envf, frame_of(w->left, inst), inst);
      Frame fq = frame_compose(envf, frame_of(w->right, inst), inst);
      return !frame_equivalent(inst, fp, fq);
    }
    case Witness::Kind::ExtendFail: {
      if (!w->inner) return false;
      return replay(w->inner, inst, cfg, policy);
    }
    case Witness::Kind::UnmatchedMove: {
      const AgentPtr& challenger = w->mover_left ? w->left : w->right;
      const AgentPtr& defender = w->mover_left ? w->right : w->left;
      TransitionsResult tc =
          transitions(w->env, challenger, inst, policy, cfg.rep_bound);
      Residual challenger_move{w->action, w->deriv};
      bool found = false;
      for (const Transition& t : tc.list)
        if (alpha_equal(t.res, challenger_move)) found = true;
      if (!found) return false;
      TransitionsResult td = transitions(w->env, defender, inst, policy,
                                         cfg.rep_bound + kDefenderSlack);
      // the witness must cover every same-action defender reply
      size_t matching = 0;
      for (const Transition& t : td.list) {
        const Action& a = w->action;
        const Action& b = t.res.act;
        if (a.kind != b.kind) continue;
        if (a.kind != Action::Kind::Tau) {
          if (!(a.subject == b.subject)) continue;
          if (a.kind == Action::Kind::In && !(a.object == b.object)) continue;
          if (a.kind == Action::Kind::Out) {
            if (a.opened.size() != b.opened.size()) continue;
            Permutation perm = Permutation::zip(b.opened, a.opened);
            if (!(apply_perm(perm, b.object) == a.object)) continue;
          }
        }
        ++matching;
      }
      if (matching != w->replies.size()) return false;
      for (const auto& [reply, sub] : w->replies)
        if (!sub || !replay(sub, inst, cfg, policy)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

bool verify_witness(const WitnessPtr& w, const Instance& inst,
                    const GameConfig& cfg) {
  if (!w) return false;
  NameSet all = set_union(support(w->env),
                          set_union(support(w->left), support(w->right)));
  std::vector<Term> cands = cfg.candidates;
  if (cands.empty())
    cands = default_candidates(w->env, w->left, w->right, fresh_name(all));
  return replay(w, inst, cfg, InputPolicy::with_candidates(std::move(cands)));
}

// ---------------------------------------------------------------------
// JSON output.

namespace {

nlohmann::json witness_json(const WitnessPtr& w, const Instance& inst,
                            const NameTable& names) {
  nlohmann::json j;
  j["environment"] = inst.print_assertion(w->env, names);
  j["left"] = print_agent(w->left, inst, names, true);
  j["right"] = print_agent(w->right, inst, names, true);
  switch (w->kind) {
    case Witness::Kind::StaticFail:
      j["kind"] = "static-inequivalence";
      break;
    case Witness::Kind::ExtendFail:
      j["kind"] = "extension";
      j["extension"] = inst.print_assertion(w->extension, names);
      j["inner"] = witness_json(w->inner, inst, names);
      break;
    case Witness::Kind::UnmatchedMove: {
      j["kind"] = "move";
      j["mover"] = w->mover_left ? "left" : "right";
      j["action"] = print_action(w->action, names);
      j["derivative"] = print_agent(w->deriv, inst, names, true);
      nlohmann::json rs = nlohmann::json::array();
      for (const auto& [reply, sub] : w->replies) {
        nlohmann::json rj;
        rj["derivative"] = print_agent(reply, inst, names, true);
        rj["refutation"] = witness_json(sub, inst, names);
        rs.push_back(rj);
      }
      j["replies"] = rs;
      break;
    }
  }
  return j;
}

}  // namespace

std::string witness_to_json(const WitnessPtr& w, const Instance& inst,
                            const NameTable& names) {
  return witness_json(w, inst, names).dump(2);
}

std::string verdict_to_json(const Verdict& v, const Instance& inst,
                            const NameTable& names) {
  nlohmann::json j;
  switch (v.kind) {
    case Verdict::Kind::Bisimilar:
      j["verdict"] = "bisimilar-up-to-basis";
      break;
    case Verdict::Kind::NotBisimilar:
      j["verdict"] = "not-bisimilar";
      break;
    case Verdict::Kind::Inconclusive:
      j["verdict"] = "inconclusive";
      j["reason"] = v.reason;
      break;
  }
  j["bases_exact"] = v.bases_exact;
  j["rep_bounded"] = v.rep_bounded;
  j["states_explored"] = v.states_explored;
  if (v.witness) j["witness"] = witness_json(v.witness, inst, names);
  return j.dump(2);
}

}  // namespace psi
