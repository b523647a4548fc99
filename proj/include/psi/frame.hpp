#pragma once

#include "psi/assertion.hpp"

namespace psi {

// A frame (nu b~)Psi: a binding name sequence over an assertion.
// Identified up to alpha-equivalence; support is n(Psi) minus the binders.
struct Frame {
  NameSeq binders;
  Assertion assertion;

  static Frame of(Assertion a) { return Frame{{}, std::move(a)}; }
};

NameSet support(const Frame& f);
Frame apply_perm(const Permutation& p, const Frame& f);
bool alpha_equal(const Frame& f, const Frame& g);

// Alpha-converts so that every binder avoids `avoid` (and the other
// binders); returns the converted frame.
Frame freshen(const Frame& f, const NameSet& avoid);

// Composition (nu b1~ b2~)(Psi1 x Psi2) with binders renamed apart.
// The assertion-level composition is supplied by the caller since it is
// instance-specific.
template <typename Compose>
Frame frame_compose_with(const Frame& f, const Frame& g, Compose&& comp) {
  NameSet avoid = set_union(support(f), support(g));
  Frame ff = freshen(f, set_union(avoid, to_set(g.binders)));
  NameSet avoid2 = set_union(avoid, to_set(ff.binders));
  Frame gg = freshen(g, avoid2);
  NameSeq bs = ff.binders;
  bs.insert(bs.end(), gg.binders.begin(), gg.binders.end());
  return Frame{std::move(bs), comp(ff.assertion, gg.assertion)};
}

}  // namespace psi
