#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sagbisat/coeff.hpp"

namespace sagbisat {

using IntMatrix = std::vector<std::vector<long>>;

/// A power product a_0^{e_0} ... a_n^{e_n}, stored as a dense exponent vector.
class Term {
 public:
  Term() = default;
  explicit Term(std::vector<int> exponents);
  static Term one(std::size_t nvars) { return Term(std::vector<int>(nvars, 0)); }
  static Term variable(std::size_t nvars, std::size_t i);

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }
  long total_degree() const;
  bool is_one() const;

  bool divides(const Term& other) const;
  Term lcm(const Term& other) const;
  Term gcd(const Term& other) const;

  friend Term operator*(const Term& a, const Term& b);
  /// Exact quotient; requires b.divides(a).
  friend Term operator/(const Term& a, const Term& b);
  friend bool operator==(const Term&, const Term&) = default;
  /// Lexicographic on exponent vectors; only for containers, not a term ordering.
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  std::vector<int> exps_;
};

/// Weight-matrix grading deg_W(t) = W * log(t).
class Grading {
 public:
  Grading() = default;
  explicit Grading(IntMatrix rows);
  /// Single-row grading.
  static Grading row(std::vector<long> weights) { return Grading(IntMatrix{std::move(weights)}); }
  static Grading standard(std::size_t nvars) { return row(std::vector<long>(nvars, 1)); }

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t nvars() const { return rows_.empty() ? 0 : rows_[0].size(); }
  const IntMatrix& rows() const { return rows_; }
  const std::vector<long>& row(std::size_t i) const { return rows_.at(i); }
  /// Grading given by the first row only.
  Grading first_row() const { return row(rows_.at(0)); }

  std::vector<long> degree(std::span<const int> exponents) const;
  std::vector<long> degree(const Term& t) const { return degree(std::span<const int>(t.exponents())); }

  /// No zero column, and the first nonzero entry of every column is positive.
  bool is_positive() const;

  friend bool operator==(const Grading&, const Grading&) = default;

 private:
  IntMatrix rows_;
};

inline std::vector<long> degree(const Term& t, const Grading& w) { return w.degree(t); }

/// Term ordering given by a nonsingular integer matrix: t < t' iff M log(t) <lex M log(t').
class TermOrdering {
 public:
  TermOrdering() = default;
  /// Validates squareness, nonsingularity and that the first nonzero entry of
  /// every column is positive. Throws InvalidOrdering.
  static TermOrdering from_matrix(IntMatrix m);
  static TermOrdering degrevlex(std::size_t nvars);
  static TermOrdering lex(std::size_t nvars);

  std::size_t nvars() const { return m_.size(); }
  const IntMatrix& matrix() const { return m_; }

  std::strong_ordering compare(const Term& a, const Term& b) const;
  std::vector<long> key(std::span<const int> exponents) const;

  /// True if the leading rows of the matrix are the independent rows of W
  /// (so the ordering refines deg_W).
  bool is_compatible_with(const Grading& w) const;
  /// Compatible with W and, among terms of equal W-degree, a smaller
  /// exponent of variable 0 gives a larger term.
  bool is_a0_degrev_type(const Grading& w) const;

  friend bool operator==(const TermOrdering&, const TermOrdering&) = default;

 private:
  explicit TermOrdering(IntMatrix m) : m_(std::move(m)) {}
  IntMatrix m_;
};

/// Stacks the independent rows of W, then (-1,0,...,0), then -e_n, -e_{n-1}, ...
/// keeping each row that raises the rank. Throws NotPositiveGrading.
TermOrdering make_a0_degrev(const Grading& w);

/// Rank of an integer matrix (exact).
std::size_t matrix_rank(const IntMatrix& m);

/// Ambient polynomial ring: field, variable names, term ordering, optional grading.
class Ring {
 public:
  Ring(Field field, std::vector<std::string> names, TermOrdering ordering,
       std::optional<Grading> grading = std::nullopt);

  /// K[a0..an] with the given ordering (degrevlex when omitted).
  static std::shared_ptr<const Ring> make(Field field, std::size_t nvars,
                                          std::optional<TermOrdering> ordering = std::nullopt,
                                          std::optional<Grading> grading = std::nullopt,
                                          std::string_view prefix = "a");

  const Field& field() const { return field_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const TermOrdering& ordering() const { return ordering_; }
  const std::optional<Grading>& grading() const { return grading_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  // Internal monomial encoding: ordering key (M * e) followed by exponents.
  std::size_t stride() const { return 2 * names_.size(); }
  void encode(std::span<const int> exponents, int* out) const;

  bool same_as(const Ring& other) const;

 private:
  Field field_;
  std::vector<std::string> names_;
  TermOrdering ordering_;
  std::optional<Grading> grading_;
  std::vector<int> flat_matrix_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Sparse multivariate polynomial with terms kept in descending ring order and
/// no zero coefficients stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const FieldElement& c);
  static Polynomial constant(RingPtr ring, long c);
  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial monomial(RingPtr ring, const FieldElement& c, const Term& t);
  /// Sums the given monomials (duplicates combined, zeros dropped).
  static Polynomial from_terms(RingPtr ring, const std::vector<std::pair<Term, FieldElement>>& terms);

  const RingPtr& ring() const { return ring_; }
  const Field& field() const { return ring_->field(); }
  std::size_t nvars() const { return ring_->nvars(); }

  bool is_zero() const { return coeffs_.empty(); }
  std::size_t num_terms() const { return coeffs_.size(); }
  bool is_constant() const;
  bool is_monomial() const { return coeffs_.size() == 1; }

  Term term(std::size_t i) const;
  std::span<const int> exponents(std::size_t i) const;
  std::span<const int> encoded(std::size_t i) const;
  const FieldElement& coeff(std::size_t i) const { return coeffs_[i]; }

  /// Requires a nonzero polynomial (ZeroPolynomial otherwise).
  Term leading_term() const;
  const FieldElement& leading_coeff() const;
  std::span<const int> leading_exponents() const;
  Polynomial tail() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const FieldElement& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const FieldElement& c) { return a *= c; }
  Polynomial operator-() const;

  /// this += c * t * p, where t is given in the internal encoding.
  void add_scaled(const FieldElement& c, std::span<const int> encoded_term, const Polynomial& p);
  /// this += c * t * p.
  void add_scaled(const FieldElement& c, const Term& t, const Polynomial& p);

  Polynomial pow(unsigned e) const;
  Polynomial monic() const;
  void make_monic();

  /// Quotient f / g if g divides f exactly.
  std::optional<Polynomial> divide_exact(const Polynomial& g) const;
  /// Divides every term by t; requires t to divide every term.
  Polynomial divide_by_term(const Term& t) const;

  /// Image in `target`, sending variable i to target variable var_map[i].
  Polynomial map_variables(const RingPtr& target, std::span<const std::size_t> var_map) const;
  /// Image under the algebra map sending variable i to images[i].
  Polynomial substitute(const RingPtr& target, std::span<const Polynomial> images) const;

  /// The same polynomial re-sorted under another ring with the same
  /// variables and field (e.g. a different ordering).
  Polynomial reorder(const RingPtr& target) const;

  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

  // Raw access for performance-sensitive algorithms.
  const std::vector<int>& raw_monomials() const { return mons_; }
  static Polynomial from_raw(RingPtr ring, std::vector<int> mons, std::vector<FieldElement> coeffs);

 private:
  friend class Geobucket;
  void check_ring(const Polynomial& o) const;

  RingPtr ring_;
  std::vector<int> mons_;
  std::vector<FieldElement> coeffs_;
};

using Bindings = std::map<std::string, Polynomial, std::less<>>;

/// Parses `a1^2 - 2/3*a0*a2 + (a1 + a2)^3`. Identifiers are ring variables or
/// entries of `bindings`; positions in errors are offset by (line, column).
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, const Bindings* bindings = nullptr,
                            int line = 1, int column = 1);

/// Accumulator for long reduction chains: sums of many scaled and shifted
/// polynomials with cheap extraction of the current leading monomial.
class Geobucket {
 public:
  explicit Geobucket(RingPtr ring);
  explicit Geobucket(const Polynomial& p);

  /// this += c * t * p, skipping the first `skip` terms of p.
  void add(const FieldElement& c, std::span<const int> encoded_term, const Polynomial& p, std::size_t skip = 0);
  void add(const Polynomial& p) { add(FieldElement::one(ring_->field()), one_, p); }

  /// Removes and returns the leading monomial; false when empty.
  bool pop_leading(std::vector<int>& encoded_out, FieldElement& coeff_out);
  bool is_zero();
  /// Collapses everything into one polynomial.
  Polynomial value();

 private:
  struct Bucket {
    std::vector<int> mons;
    std::vector<FieldElement> coeffs;
    std::size_t start = 0;
    std::size_t size() const { return coeffs.size() - start; }
  };
  void merge(Bucket& into, Bucket& from);

  RingPtr ring_;
  std::vector<Bucket> buckets_;
  std::vector<int> one_;
};

/// (LT(f), LC(f)); throws ZeroPolynomial.
std::pair<Term, FieldElement> leading(const Polynomial& f);

struct SaturatedPoly {
  Polynomial value;
  unsigned exponent;
};
/// f = g^i * value with g not dividing value; (0, 0) for f = 0.
SaturatedPoly saturate_poly(const Polynomial& f, const Polynomial& g);

/// Common W-degree of all terms, or nullopt if f is not W-homogeneous.
/// The zero polynomial is homogeneous with an empty degree vector.
std::optional<std::vector<long>> homogeneous_degree(const Polynomial& f, const Grading& w);
bool is_homogeneous(const Polynomial& f, const Grading& w);

/// Compares encoded monomials by ordering key.
inline int compare_encoded(const int* a, const int* b, std::size_t nkeys) {
  for (std::size_t i = 0; i < nkeys; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace sagbisat
