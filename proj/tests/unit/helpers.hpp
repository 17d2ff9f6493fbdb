#pragma once

#include <random>
#include <string>
#include <vector>

#include "sagbisat/ring.hpp"

namespace sagbisat::testing {

inline RingPtr qq_ring(std::size_t nvars, std::optional<TermOrdering> ord = std::nullopt) {
  return Ring::make(Field::rationals(), nvars, std::move(ord));
}

inline Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

// Random polynomial with small integer coefficients and bounded exponents.
inline Polynomial random_poly(const RingPtr& r, std::mt19937_64& rng, int max_terms, int max_exp) {
  std::uniform_int_distribution<int> nterms(0, max_terms), ex(0, max_exp), co(-5, 5);
  std::vector<std::pair<Term, FieldElement>> terms;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    std::vector<int> e(r->nvars());
    for (int& x : e) x = ex(rng);
    terms.emplace_back(Term(e), FieldElement(r->field(), static_cast<long>(co(rng))));
  }
  return Polynomial::from_terms(r, terms);
}

inline Term random_term(std::size_t n, std::mt19937_64& rng, int max_exp) {
  std::uniform_int_distribution<int> ex(0, max_exp);
  std::vector<int> e(n);
  for (int& x : e) x = ex(rng);
  return Term(e);
}

}  // namespace sagbisat::testing
