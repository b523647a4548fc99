#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace psi {

// An atomic name. Names are plain indices with a total, stable order;
// printable spellings live in the workspace's NameTable.
struct Name {
  uint32_t id = 0;
  auto operator<=>(const Name&) const = default;
};

using NameSeq = std::vector<Name>;
using NameSet = std::set<Name>;

inline bool contains(const NameSet& s, Name n) { return s.count(n) != 0; }

NameSet set_union(const NameSet& a, const NameSet& b);
NameSet set_diff(const NameSet& a, const NameSet& b);
NameSet set_intersect(const NameSet& a, const NameSet& b);
bool disjoint(const NameSet& a, const NameSet& b);
NameSet to_set(const NameSeq& xs);

// A finite composition of name swaps (a b), applied right-to-left.
// Swapping is total: it moves binding occurrences as well.
class Permutation {
 public:
  Permutation() = default;
  static Permutation single(Name a, Name b) {
    Permutation p;
    p.push(a, b);
    return p;
  }
  // Pairs up xs[i] with ys[i]; used for sequence alpha-conversion.
  static Permutation zip(const NameSeq& xs, const NameSeq& ys);

  void push(Name a, Name b) { swaps_.push_back({a, b}); }
  bool empty() const { return swaps_.empty(); }
  Name apply(Name n) const;
  Permutation inverse() const;

 private:
  struct Swap {
    Name a, b;
  };
  std::vector<Swap> swaps_;
};

NameSet apply_perm(const Permutation& p, const NameSet& s);
NameSeq apply_perm(const Permutation& p, const NameSeq& xs);

// Deterministic freshness: the n lowest indices outside `avoid`.
NameSeq fresh_names(size_t n, const NameSet& avoid);
Name fresh_name(const NameSet& avoid);

// Maps name indices to printable spellings. Interning is the only
// mutation in the system; keep one table per workspace.
class NameTable {
 public:
  Name intern(const std::string& s);
  std::optional<Name> find(const std::string& s) const;
  const std::string* lookup(Name n) const;
  size_t size() const { return strings_.size(); }

 private:
  std::vector<std::string> strings_;
  std::unordered_map<std::string, uint32_t> by_string_;
};

struct Workspace {
  NameTable names;
};

}  // namespace psi
