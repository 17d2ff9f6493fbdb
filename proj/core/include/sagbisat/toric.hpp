#pragma once

#include <optional>
#include <vector>

#include "sagbisat/ring.hpp"

namespace sagbisat {

/// x^lead - x^trail over variables x_1..x_r (index i stands for terms[i]).
struct Binomial {
  std::vector<int> lead;
  std::vector<int> trail;
  friend bool operator==(const Binomial&, const Binomial&) = default;
};

/// Binomial generators of Rel(t_1, ..., t_r) = ker(x_i -> t_i).
struct BinomialIdeal {
  std::vector<Term> terms;
  std::vector<Binomial> binomials;
  /// deg(x_i) = deg_W(t_i).
  Grading induced;

  /// The binomials as polynomials in a ring with r variables.
  std::vector<Polynomial> polynomials(const RingPtr& xring) const;
};

/// Full generating set (a reduced Gröbner basis) of the toric ideal.
/// Degrees are taken from `w` when given, from total degree otherwise.
BinomialIdeal toric_ideal(const std::vector<Term>& terms, const std::optional<Grading>& w = std::nullopt);

/// Generators of first-row W-degree <= d; exact for all relations up to d.
BinomialIdeal toric_generators_up_to(const std::vector<Term>& terms, const Grading& w, long d);

/// Exponents alpha with t0 = prod terms[i]^alpha[i], or nullopt. Among all
/// representations the lexicographically smallest alpha is returned. Uses
/// the toric ideal of the dividing terms.
std::optional<std::vector<int>> monomial_membership(const Term& t0, const std::vector<Term>& terms);

/// Same contract as monomial_membership, by memoized depth-first search.
class MonomialRepresenter {
 public:
  explicit MonomialRepresenter(std::vector<Term> terms);
  std::optional<std::vector<int>> represent(std::span<const int> t0) const;
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

}  // namespace sagbisat
