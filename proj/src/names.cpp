#include "psi/names.hpp"

#include <algorithm>

namespace psi {

NameSet set_union(const NameSet& a, const NameSet& b) {
  NameSet r = a;
  r.insert(b.begin(), b.end());
  return r;
}

NameSet set_diff(const NameSet& a, const NameSet& b) {
  NameSet r;
  for (Name n : a)
    if (!b.count(n)) r.insert(n);
  return r;
}

NameSet set_intersect(const NameSet& a, const NameSet& b) {
  NameSet r;
  for (Name n : a)
    if (b.count(n)) r.insert(n);
  return r;
}

bool disjoint(const NameSet& a, const NameSet& b) {
  for (Name n : a)
    if (b.count(n)) return false;
  return true;
}

NameSet to_set(const NameSeq& xs) { return NameSet(xs.begin(), xs.end()); }

Permutation Permutation::zip(const NameSeq& xs, const NameSeq& ys) {
  Permutation p;
  for (size_t i = 0; i < xs.size() && i < ys.size(); ++i) p.push(xs[i], ys[i]);
  return p;
}

Name Permutation::apply(Name n) const {
  // Right-to-left: the last pushed swap is applied first when composing,
  // matching (a b)·(c d)·X read outside-in.
  for (auto it = swaps_.rbegin(); it != swaps_.rend(); ++it) {
    if (n == it->a)
      n = it->b;
    else if (n == it->b)
      n = it->a;
  }
  return n;
}

Permutation Permutation::inverse() const {
  Permutation p;
  for (auto it = swaps_.rbegin(); it != swaps_.rend(); ++it) p.push(it->a, it->b);
  return p;
}

NameSet apply_perm(const Permutation& p, const NameSet& s) {
  NameSet r;
  for (Name n : s) r.insert(p.apply(n));
  return r;
}

NameSeq apply_perm(const Permutation& p, const NameSeq& xs) {
  NameSeq r;
  r.reserve(xs.size());
  for (Name n : xs) r.push_back(p.apply(n));
  return r;
}

NameSeq fresh_names(size_t n, const NameSet& avoid) {
  NameSeq out;
  uint32_t k = 0;
  while (out.size() < n) {
    Name cand{k++};
    if (!avoid.count(cand)) out.push_back(cand);
  }
  return out;
}

Name fresh_name(const NameSet& avoid) { return fresh_names(1, avoid)[0]; }

Name NameTable::intern(const std::string& s) {
  auto it = by_string_.find(s);
  if (it != by_string_.end()) return Name{it->second};
  uint32_t id = static_cast<uint32_t>(strings_.size());
  strings_.push_back(s);
  by_string_.emplace(s, id);
  return Name{id};
}

std::optional<Name> NameTable::find(const std::string& s) const {
  auto it = by_string_.find(s);
  if (it == by_string_.end()) return std::nullopt;
  return Name{it->second};
}

const std::string* NameTable::lookup(Name n) const {
  if (n.id < strings_.size()) return &strings_[n.id];
  return nullptr;
}

}  // namespace psi
