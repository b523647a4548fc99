#include <deque>
#include <json.hpp>
#include <map>

#include "psi/parser.hpp"
#include "psi/semantics.hpp"

namespace psi {

LtsGraph build_lts(const Assertion& env, const AgentPtr& p, const Instance& inst,
                   const LtsBounds& bounds, const InputPolicy& policy,
                   const NameTable& names, int rep_bound) {
  LtsGraph g;
  std::map<std::string, size_t> seen;  // alpha-canonical key -> id

  struct Item {
    size_t id;
    size_t depth;
  };
  std::deque<Item> frontier;

  auto intern_state = [&](const AgentPtr& a) -> std::pair<size_t, bool> {
    std::string key = canonical_key(a);
    auto it = seen.find(key);
    if (it != seen.end()) return {it->second, false};
    size_t id = g.states.size();
    g.states.push_back(a);
    seen.emplace(std::move(key), id);
    return {id, true};
  };

  intern_state(p);
  frontier.push_back({0, 0});

  while (!frontier.empty()) {
    Item item = frontier.front();
    frontier.pop_front();
    if (item.depth >= bounds.max_depth) {
      g.truncated = true;
      continue;
    }
    TransitionsResult res =
        transitions(env, g.states[item.id], inst, policy, rep_bound);
    if (res.truncated) g.truncated = true;
    for (const Transition& t : res.list) {
      if (g.states.size() >= bounds.max_states) {
        g.truncated = true;
        break;
      }
      auto [dst, fresh] = intern_state(t.res.deriv);
      g.edges.push_back({item.id, print_action(t.res.act, names), dst});
      if (fresh) frontier.push_back({dst, item.depth + 1});
    }
  }
  return g;
}

std::string lts_to_dot(const LtsGraph& g, const Instance& inst,
                       const NameTable& names) {
  std::string out = "digraph lts {\n  rankdir=LR;\n";
  for (size_t i = 0; i < g.states.size(); ++i) {
    std::string label = print_agent(g.states[i], inst, names, true);
    std::string esc;
    for (char c : label) {
      if (c == '"' || c == '\\') esc += '\\';
      esc += c;
    }
    out += "  s" + std::to_string(i) + " [label=\"" + esc + "\"];\n";
  }
  for (const LtsEdge& e : g.edges) {
    std::string esc;
    for (char c : e.label) {
      if (c == '"' || c == '\\') esc += '\\';
      esc += c;
    }
    out += "  s" + std::to_string(e.src) + " -> s" + std::to_string(e.dst) +
           " [label=\"" + esc + "\"];\n";
  }
  if (g.truncated) out += "  truncated [shape=box];\n";
  out += "}\n";
  return out;
}

std::string lts_to_json(const LtsGraph& g, const Instance& inst,
                        const NameTable& names) {
  nlohmann::json j;
  nlohmann::json states = nlohmann::json::array();
  for (size_t i = 0; i < g.states.size(); ++i) {
    nlohmann::json s;
    s["id"] = i;
    s["agent"] = print_agent(g.states[i], inst, names, true);
    Frame f = frame_of(g.states[i], inst);
    std::string fr = "(new ";
    for (size_t k = 0; k < f.binders.size(); ++k) {
      if (k) fr += ",";
      fr += print_name(f.binders[k], names);
    }
    fr += ")" + inst.print_assertion(f.assertion, names);
    s["frame"] = f.binders.empty() ? inst.print_assertion(f.assertion, names) : fr;
    states.push_back(s);
  }
  j["states"] = states;
  nlohmann::json edges = nlohmann::json::array();
  for (const LtsEdge& e : g.edges) {
    nlohmann::json ej;
    ej["src"] = e.src;
    ej["label"] = e.label;
    ej["dst"] = e.dst;
    edges.push_back(ej);
  }
  j["edges"] = edges;
  j["truncated"] = g.truncated;
  return j.dump(2);
}

}  // namespace psi
