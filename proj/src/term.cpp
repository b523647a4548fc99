#include "psi/term.hpp"

#include <sstream>

namespace psi {

Term Term::name(Name n) {
  auto node = std::make_shared<Node>();
  node->is_name = true;
  node->leaf = n;
  return Term(std::move(node));
}

Term Term::app(std::string sym, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->is_name = false;
  node->sym = std::move(sym);
  node->args = std::move(args);
  return Term(std::move(node));
}

size_t Term::size() const {
  if (is_name()) return 1;
  size_t n = 1;
  for (const Term& a : args()) n += a.size();
  return n;
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  return compare(*this, o) == 0;
}

int compare(const Term& a, const Term& b) {
  if (a.is_name() != b.is_name()) return a.is_name() ? -1 : 1;
  if (a.is_name()) {
    if (a.as_name() < b.as_name()) return -1;
    if (b.as_name() < a.as_name()) return 1;
    return 0;
  }
  if (int c = a.symbol().compare(b.symbol())) return c < 0 ? -1 : 1;
  if (a.args().size() != b.args().size())
    return a.args().size() < b.args().size() ? -1 : 1;
  for (size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(a.args()[i], b.args()[i])) return c;
  return 0;
}

void collect_support(const Term& t, NameSet& out) {
  if (t.is_name()) {
    out.insert(t.as_name());
    return;
  }
  for (const Term& a : t.args()) collect_support(a, out);
}

NameSet support(const Term& t) {
  NameSet s;
  collect_support(t, s);
  return s;
}

Term apply_perm(const Permutation& p, const Term& t) {
  if (p.empty()) return t;
  if (t.is_name()) return Term::name(p.apply(t.as_name()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply_perm(p, a));
  return Term::app(t.symbol(), std::move(args));
}

Term subst_syntactic(const Term& t, const NameSeq& xs, const std::vector<Term>& ls) {
  if (t.is_name()) {
    for (size_t i = 0; i < xs.size(); ++i)
      if (xs[i] == t.as_name()) return ls[i];
    return t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(subst_syntactic(a, xs, ls));
  return Term::app(t.symbol(), std::move(args));
}

std::string print_name(Name n, const NameTable& names) {
  if (const std::string* s = names.lookup(n)) return *s;
  std::ostringstream os;
  os << "x" << n.id;
  return os.str();
}

std::string print_term(const Term& t, const NameTable& names) {
  if (t.is_name()) return print_name(t.as_name(), names);
  std::string out = t.symbol();
  if (t.args().empty()) return out;  // nullary constants print bare
  out += "(";
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ",";
    out += print_term(t.args()[i], names);
  }
  out += ")";
  return out;
}

}  // namespace psi
