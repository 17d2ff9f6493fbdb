#pragma once

#include <vector>

#include "sagbisat/saturate.hpp"

namespace sagbisat {

/// Bigrading [[0, 1, ..., n], [1, 1, ..., 1]] on a0..an.
Grading uinv_grading(int n);

/// K[a0..an] graded by uinv_grading(n) under make_a0_degrev.
RingPtr uinv_ring(const Field& field, int n);

/// The semi-invariant c_k in a ring with at least k+1 variables:
///   (-1)^(k-1) [ (k-1) a1^[k] + sum_{j=2..k} (-1)^(j-1) a0^(j-1) a1^[k-j] a_j ]
/// with a^[i] = a^i / i!. Throws DividedPowerUndefined, InvalidArgument.
Polynomial c_polynomial(const RingPtr& ring, int k);

/// Image of h under a_i -> sum_{j<=i} a_j t^(i-j) / (i-j)!, the coefficient
/// change of f(x) -> f(x + t) for f = sum_i a_i x^(n-i) / (n-i)!. The result
/// lives in a ring with one extra variable t, placed last.
Polynomial translate(const Polynomial& h);

/// translate(h) == h.
bool is_translation_invariant(const Polynomial& h);

struct UinvProblem {
  int n = 2;
  Field field = Field::rationals();
  long degree = 0;
};

struct UinvResult {
  SaturationResult sagbi;
  std::vector<Polynomial> minimal;
  std::vector<Term> leading_terms;
  std::vector<std::vector<long>> bidegrees;
  std::vector<std::size_t> support_sizes;
};

/// K[a0, c2, ..., cn] : a0^inf via trunc_sat_sagbi at the given first-row
/// degree, followed by min_gens.
UinvResult compute_Sn(const UinvProblem& prob, const SaturationOptions& opts = {});

}  // namespace sagbisat
