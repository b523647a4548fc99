#include "psi/frame.hpp"

namespace psi {

NameSet support(const Frame& f) {
  return set_diff(support(f.assertion), to_set(f.binders));
}

Frame apply_perm(const Permutation& p, const Frame& f) {
  return Frame{apply_perm(p, f.binders), apply_perm(p, f.assertion)};
}

Frame freshen(const Frame& f, const NameSet& avoid) {
  // `taken` covers everything a new binder must avoid, including the
  // original binders (a swap must not capture a later binder). Renames
  // are applied as a forward pipeline, one swap after the other.
  NameSet taken = set_union(avoid, support(f.assertion));
  for (Name b : f.binders) taken.insert(b);
  std::vector<std::pair<Name, Name>> renames;
  auto fwd = [&](Name n) {
    for (const auto& [x, y] : renames) {
      if (n == x)
        n = y;
      else if (n == y)
        n = x;
    }
    return n;
  };
  NameSet seen;
  NameSeq fresh;
  for (Name b : f.binders) {
    Name cur = fwd(b);
    Name nb = cur;
    if (avoid.count(cur) || seen.count(cur)) {
      nb = fresh_name(taken);
      taken.insert(nb);
      renames.push_back({cur, nb});
    }
    seen.insert(nb);
    fresh.push_back(nb);
  }
  if (renames.empty()) return f;
  Assertion a = f.assertion;
  for (const auto& [x, y] : renames) a = apply_perm(Permutation::single(x, y), a);
  return Frame{std::move(fresh), std::move(a)};
}

bool alpha_equal(const Frame& f, const Frame& g) {
  if (f.binders.size() != g.binders.size()) return false;
  if (support(f) != support(g)) return false;
  NameSet avoid = set_union(set_union(support(f.assertion), support(g.assertion)),
                            set_union(to_set(f.binders), to_set(g.binders)));
  NameSeq common = fresh_names(f.binders.size(), avoid);
  Assertion fa = apply_perm(Permutation::zip(f.binders, common), f.assertion);
  Assertion ga = apply_perm(Permutation::zip(g.binders, common), g.assertion);
  return fa == ga;
}

}  // namespace psi
