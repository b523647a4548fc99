#include "psi/unionfind.hpp"

namespace psi {

Name NameUnionFind::root(Name n) const {
  auto it = parent_.find(n);
  if (it == parent_.end()) return n;
  Name r = root(it->second);
  parent_[n] = r;
  return r;
}

void NameUnionFind::merge(Name a, Name b) {
  Name ra = root(a);
  Name rb = root(b);
  if (ra == rb) return;
  // smaller name wins so representatives are deterministic
  if (rb < ra) std::swap(ra, rb);
  parent_[rb] = ra;
}

Name NameUnionFind::find(Name n) const { return root(n); }

bool NameUnionFind::same(Name a, Name b) const { return root(a) == root(b); }

std::vector<std::pair<Name, Name>> NameUnionFind::canonical_pairs() const {
  std::vector<std::pair<Name, Name>> out;
  for (const auto& [n, p] : parent_) {
    Name r = root(n);
    if (n != r) out.push_back({n, r});
  }
  return out;
}

}  // namespace psi
