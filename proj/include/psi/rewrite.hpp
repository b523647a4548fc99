#pragma once

#include "psi/instance.hpp"

namespace psi {

// The shipped cryptographic rewrite theory:
//   dec(enc(x,y),y) -> x
//   dec(enc(x,pk(k)),sk(k)) -> x
//   dec(enc(x,pk(k),z),sk(k)) -> x        (salted)
//   check(x,sign(x,sk(k)),pk(k)) -> ok
//   fst(pair(x,y)) -> x
//   snd(pair(x,y)) -> y
// plus the Diffie-Hellman identity f(x,g(y)) = f(y,g(x)), handled by
// ordering the commutative pair so normal forms stay unique.
Term crypto_normalize(const Term& t);

// Normalizes by applying applicable redexes in a randomized order; used to
// test uniqueness of normal forms.
Term crypto_normalize_random(const Term& t, Rng& rng);

bool crypto_signature_symbol(const std::string& sym, size_t arity);

// Ground congruence closure over the equations, modulo the rewrite theory.
bool crypto_entails_eq(const std::vector<std::pair<Term, Term>>& eqs,
                       const Term& m, const Term& n);

void collect_subterms(const Term& t, std::vector<Term>& out);

}  // namespace psi
