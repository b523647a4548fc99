#pragma once

#include <map>

#include "psi/names.hpp"

namespace psi {

// Equivalence closure of a finite set of name pairs. Rebuilt per query so
// shared assertions stay immutable.
class NameUnionFind {
 public:
  void merge(Name a, Name b);
  Name find(Name n) const;
  bool same(Name a, Name b) const;
  // Canonical pairs (x, repr) restricted to the touched names.
  std::vector<std::pair<Name, Name>> canonical_pairs() const;

 private:
  mutable std::map<Name, Name> parent_;
  Name root(Name n) const;
};

}  // namespace psi
