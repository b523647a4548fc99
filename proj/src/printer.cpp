#include <set>

#include "psi/parser.hpp"

namespace psi {

namespace {

// Binder display names are chosen per scope: the interned spelling when it
// cannot be confused with anything visible, otherwise x0, x1, ...
struct Printer {
  const NameTable& names;
  std::vector<std::pair<Name, std::string>> display;
  std::set<std::string> scope;

  explicit Printer(const NameTable& nt) : names(nt) {}

  std::string disp(Name n) const {
    for (auto it = display.rbegin(); it != display.rend(); ++it)
      if (it->first == n) return it->second;
    return print_name(n, names);
  }

  std::string term(const Term& t) const {
    if (t.is_name()) return disp(t.as_name());
    std::string out = t.symbol();
    if (t.args().empty()) return out;
    out += "(";
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ",";
      out += term(t.args()[i]);
    }
    out += ")";
    return out;
  }

  std::string cond(const Condition& c) const {
    switch (c.kind) {
      case CondKind::TermEq:
        return term(c.lhs) + " = " + term(c.rhs);
      case CondKind::ChanEq:
        return term(c.lhs) + " <-> " + term(c.rhs);
      case CondKind::Consistent:
        return "cons " + assertion(*c.inner);
    }
    return "";
  }

  std::string assertion(const Assertion& a) const {
    switch (a.kind) {
      case AssertKind::Unit:
        return "1";
      case AssertKind::Names: {
        std::string out = "{";
        for (size_t i = 0; i < a.elems.size(); ++i) {
          if (i) out += ",";
          out += term(a.elems[i]);
        }
        return out + "}";
      }
      case AssertKind::Equations:
      case AssertKind::Store: {
        if (a.bottom) return "bot";
        std::string out = "{";
        for (size_t i = 0; i < a.eqs.size(); ++i) {
          if (i) out += ",";
          out += term(a.eqs[i].first) + "=" + term(a.eqs[i].second);
        }
        return out + "}";
      }
    }
    return "";
  }

  std::string binder_name(Name n, const NameSet& visible_free) {
    std::set<std::string> taken = scope;
    for (Name f : visible_free)
      if (f != n) taken.insert(disp(f));
    const std::string* s = names.lookup(n);
    if (s && !taken.count(*s)) return *s;
    for (int k = 0;; ++k) {
      std::string cand = "x" + std::to_string(k);
      if (!taken.count(cand)) return cand;
    }
  }

  // prefix-level: parenthesizes parallels and cases
  std::string prefix(const AgentPtr& p) {
    if (p->kind == AgentKind::Parallel || p->kind == AgentKind::Case)
      return "(" + par(p) + ")";
    return atom(p);
  }

  std::string par(const AgentPtr& p) {
    if (p->kind == AgentKind::Parallel)
      return par(p->left) + " | " + prefix(p->right);
    if (p->kind == AgentKind::Case) return case_text(p);
    return atom(p);
  }

  std::string case_text(const AgentPtr& p) {
    std::string out = "case";
    for (size_t i = 0; i < p->branches.size(); ++i) {
      out += i ? " [] " : " ";
      out += cond(p->branches[i].cond) + " : " + prefix(p->branches[i].body);
    }
    return out;
  }

  std::string atom(const AgentPtr& p) {
    switch (p->kind) {
      case AgentKind::Nil:
        return "0";
      case AgentKind::Output:
        return term(p->subj) + "!" + term(p->obj) + "." + prefix(p->body);
      case AgentKind::Input: {
        std::string subj = term(p->subj);
        NameSet visible = set_union(support(p->obj), support(p->body));
        size_t mark = display.size();
        std::string vars;
        std::vector<std::string> pushed;
        for (size_t i = 0; i < p->vars.size(); ++i) {
          std::string d = binder_name(p->vars[i], visible);
          display.push_back({p->vars[i], d});
          scope.insert(d);
          pushed.push_back(d);
          if (i) vars += ",";
          vars += d;
        }
        std::string out = subj + "?(\\" + vars + ")" + term(p->obj) + "." +
                          prefix(p->body);
        for (const std::string& d : pushed) scope.erase(d);
        display.resize(mark);
        return out;
      }
      case AgentKind::Case:
        return "(" + case_text(p) + ")";
      case AgentKind::Restriction: {
        // flatten runs of restrictions
        std::vector<Name> bs;
        AgentPtr body = p;
        while (body->kind == AgentKind::Restriction) {
          bs.push_back(body->bound);
          body = body->body;
        }
        size_t mark = display.size();
        std::vector<std::string> pushed;
        std::string namestext;
        NameSet visible = support(body);
        for (size_t i = 0; i < bs.size(); ++i) {
          std::string d = binder_name(bs[i], visible);
          display.push_back({bs[i], d});
          scope.insert(d);
          pushed.push_back(d);
          if (i) namestext += ",";
          namestext += d;
        }
        std::string out = "(new " + namestext + ")" + prefix(body);
        for (const std::string& d : pushed) scope.erase(d);
        display.resize(mark);
        return out;
      }
      case AgentKind::Parallel:
        return "(" + par(p) + ")";
      case AgentKind::Replication:
        return "!" + prefix(p->body);
      case AgentKind::Assert:
        return "(|" + assertion(p->assertion) + "|)";
    }
    return "0";
  }
};

}  // namespace

std::string print_agent(const AgentPtr& p, const Instance& inst,
                        const NameTable& names, bool canonical) {
  (void)inst;
  Printer pr(names);
  return pr.par(canonical ? canonicalize(p) : p);
}

}  // namespace psi
