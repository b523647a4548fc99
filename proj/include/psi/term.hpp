#pragma once

#include <memory>
#include <string>
#include <vector>

#include "psi/names.hpp"

namespace psi {

// First-order data terms: a name, or an application sym(args...).
// Immutable and cheaply shareable.
class Term {
 public:
  Term() : Term(name(Name{0})) {}
  static Term name(Name n);
  static Term app(std::string sym, std::vector<Term> args);

  bool is_name() const { return node_->is_name; }
  Name as_name() const { return node_->leaf; }
  const std::string& symbol() const { return node_->sym; }
  const std::vector<Term>& args() const { return node_->args; }
  size_t size() const;  // node count

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

 private:
  struct Node {
    bool is_name;
    Name leaf;
    std::string sym;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Total order on terms: names first (by id), then by symbol/arity/args.
int compare(const Term& a, const Term& b);
inline bool term_less(const Term& a, const Term& b) { return compare(a, b) < 0; }

void collect_support(const Term& t, NameSet& out);
NameSet support(const Term& t);
Term apply_perm(const Permutation& p, const Term& t);

// Simultaneous syntactic replacement of names by terms; xs duplicate-free.
Term subst_syntactic(const Term& t, const NameSeq& xs, const std::vector<Term>& ls);

std::string print_term(const Term& t, const NameTable& names);
std::string print_name(Name n, const NameTable& names);

}  // namespace psi
