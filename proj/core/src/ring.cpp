#include "sagbisat/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "sagbisat/error.hpp"

namespace sagbisat {

// ---------------------------------------------------------------- Term

Term::Term(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw InvalidArgument("negative exponent in term");
  }
}

Term Term::variable(std::size_t nvars, std::size_t i) {
  std::vector<int> e(nvars, 0);
  e.at(i) = 1;
  return Term(std::move(e));
}

long Term::total_degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0L); }

bool Term::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

bool Term::divides(const Term& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Term Term::lcm(const Term& other) const {
  Term r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], other.exps_[i]);
  return r;
}

Term Term::gcd(const Term& other) const {
  Term r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::min(exps_[i], other.exps_[i]);
  return r;
}

Term operator*(const Term& a, const Term& b) {
  if (a.size() != b.size()) throw RingMismatch("term lengths differ");
  Term r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] += b.exps_[i];
  return r;
}

Term operator/(const Term& a, const Term& b) {
  if (a.size() != b.size()) throw RingMismatch("term lengths differ");
  Term r = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.exps_[i] -= b.exps_[i];
    if (r.exps_[i] < 0) throw InvalidArgument("term quotient is not a term");
  }
  return r;
}

// ---------------------------------------------------------------- Grading

Grading::Grading(IntMatrix rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InvalidArgument("grading needs at least one row");
  for (const auto& r : rows_) {
    if (r.size() != rows_[0].size()) throw InvalidArgument("ragged weight matrix");
  }
}

std::vector<long> Grading::degree(std::span<const int> exponents) const {
  std::vector<long> d(rows_.size(), 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != exponents.size()) throw RingMismatch("grading width differs from term length");
    for (std::size_t j = 0; j < exponents.size(); ++j) d[i] += rows_[i][j] * exponents[j];
  }
  return d;
}

bool Grading::is_positive() const {
  for (std::size_t j = 0; j < nvars(); ++j) {
    bool ok = false;
    for (const auto& r : rows_) {
      if (r[j] != 0) {
        ok = r[j] > 0;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

// ---------------------------------------------------------------- linear algebra

std::size_t matrix_rank(const IntMatrix& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<mpq_class>> a;
  for (const auto& row : m) {
    std::vector<mpq_class> r;
    for (long v : row) r.emplace_back(v);
    a.push_back(std::move(r));
  }
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

namespace {

IntMatrix independent_rows(const IntMatrix& w) {
  IntMatrix out;
  for (const auto& r : w) {
    IntMatrix trial = out;
    trial.push_back(r);
    if (matrix_rank(trial) > out.size()) out = std::move(trial);
  }
  return out;
}

bool in_row_span(const IntMatrix& rows, const std::vector<long>& v) {
  IntMatrix t = rows;
  t.push_back(v);
  return matrix_rank(t) == matrix_rank(rows);
}

}  // namespace

// ---------------------------------------------------------------- TermOrdering

TermOrdering TermOrdering::from_matrix(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) throw InvalidOrdering("empty ordering matrix");
  for (const auto& r : m) {
    if (r.size() != n) throw InvalidOrdering("ordering matrix must be square");
  }
  if (matrix_rank(m) != n) throw InvalidOrdering("ordering matrix is singular");
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i][j] != 0) {
        if (m[i][j] < 0) throw InvalidOrdering("first nonzero entry of column " + std::to_string(j) + " is negative");
        break;
      }
    }
  }
  return TermOrdering(std::move(m));
}

TermOrdering TermOrdering::degrevlex(std::size_t nvars) {
  IntMatrix m;
  m.emplace_back(nvars, 1);
  for (std::size_t k = 0; k + 1 < nvars; ++k) {
    std::vector<long> r(nvars, 0);
    r[nvars - 1 - k] = -1;
    m.push_back(std::move(r));
  }
  return TermOrdering(std::move(m));
}

TermOrdering TermOrdering::lex(std::size_t nvars) {
  IntMatrix m(nvars, std::vector<long>(nvars, 0));
  for (std::size_t i = 0; i < nvars; ++i) m[i][i] = 1;
  return TermOrdering(std::move(m));
}

std::vector<long> TermOrdering::key(std::span<const int> exponents) const {
  std::vector<long> k(m_.size(), 0);
  for (std::size_t i = 0; i < m_.size(); ++i) {
    for (std::size_t j = 0; j < exponents.size(); ++j) k[i] += m_[i][j] * exponents[j];
  }
  return k;
}

std::strong_ordering TermOrdering::compare(const Term& a, const Term& b) const {
  if (a.size() != nvars() || b.size() != nvars()) throw RingMismatch("term length differs from ordering size");
  for (const auto& row : m_) {
    long s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * (a[j] - b[j]);
    if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool TermOrdering::is_compatible_with(const Grading& w) const {
  if (w.nvars() != nvars()) return false;
  const IntMatrix ind = independent_rows(w.rows());
  if (ind.size() > m_.size()) return false;
  for (std::size_t i = 0; i < ind.size(); ++i) {
    if (m_[i] != ind[i]) return false;
  }
  return true;
}

bool TermOrdering::is_a0_degrev_type(const Grading& w) const {
  if (!is_compatible_with(w)) return false;
  const IntMatrix ind = independent_rows(w.rows());
  std::vector<long> e0(nvars(), 0);
  e0[0] = 1;
  if (in_row_span(ind, e0)) return true;
  const auto& next = m_[ind.size()];
  if (next[0] >= 0) return false;
  std::vector<long> rest = next;
  rest[0] = 0;
  return in_row_span(ind, rest);
}

TermOrdering make_a0_degrev(const Grading& w) {
  if (!w.is_positive()) throw NotPositiveGrading("weight matrix is not a positive grading");
  const std::size_t n = w.nvars();
  IntMatrix m = independent_rows(w.rows());
  auto try_add = [&](std::vector<long> r) {
    if (m.size() == n) return;
    IntMatrix t = m;
    t.push_back(r);
    if (matrix_rank(t) > m.size()) m = std::move(t);
  };
  std::vector<long> e(n, 0);
  e[0] = -1;
  try_add(e);
  for (std::size_t k = n; k-- > 1;) {
    std::vector<long> r(n, 0);
    r[k] = -1;
    try_add(r);
  }
  return TermOrdering::from_matrix(std::move(m));
}

// ---------------------------------------------------------------- Ring

Ring::Ring(Field field, std::vector<std::string> names, TermOrdering ordering, std::optional<Grading> grading)
    : field_(field), names_(std::move(names)), ordering_(std::move(ordering)), grading_(std::move(grading)) {
  if (ordering_.nvars() != names_.size()) throw InvalidOrdering("ordering size differs from number of variables");
  if (grading_ && grading_->nvars() != names_.size()) throw InvalidArgument("grading width differs from number of variables");
  for (const auto& row : ordering_.matrix()) {
    for (long v : row) flat_matrix_.push_back(static_cast<int>(v));
  }
}

RingPtr Ring::make(Field field, std::size_t nvars, std::optional<TermOrdering> ordering,
                   std::optional<Grading> grading, std::string_view prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return std::make_shared<const Ring>(field, std::move(names),
                                      ordering ? std::move(*ordering) : TermOrdering::degrevlex(nvars),
                                      std::move(grading));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

void Ring::encode(std::span<const int> exponents, int* out) const {
  const std::size_t n = names_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int* row = &flat_matrix_[i * n];
    int s = 0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * exponents[j];
    out[i] = s;
  }
  std::copy(exponents.begin(), exponents.end(), out + n);
}

bool Ring::same_as(const Ring& other) const {
  return this == &other ||
         (field_ == other.field_ && names_ == other.names_ && ordering_ == other.ordering_);
}

// ---------------------------------------------------------------- accumulator

namespace {

/// Hash-accumulates monomials, then emits them sorted.
class Accumulator {
 public:
  Accumulator(const Ring& ring, std::size_t expected) : ring_(ring), n_(ring.nvars()), stride_(2 * n_) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    table_.assign(cap, -1);
    mons_.reserve(expected * stride_);
    coeffs_.reserve(expected);
  }

  // `enc` is an encoded monomial of length stride.
  void add(const int* enc, const FieldElement& c) {
    std::size_t h = hash(enc + n_);
    const std::size_t mask = table_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      const long slot = table_[i];
      if (slot < 0) {
        table_[i] = static_cast<long>(coeffs_.size());
        mons_.insert(mons_.end(), enc, enc + stride_);
        coeffs_.push_back(c);
        if (2 * coeffs_.size() > table_.size()) grow();
        return;
      }
      if (std::equal(enc + n_, enc + stride_, &mons_[slot * stride_ + n_])) {
        coeffs_[slot] += c;
        return;
      }
    }
  }

  Polynomial finish(RingPtr ring) {
    std::vector<std::size_t> idx;
    idx.reserve(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!coeffs_[i].is_zero()) idx.push_back(i);
    }
    const std::size_t n = n_, s = stride_;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return compare_encoded(&mons_[a * s], &mons_[b * s], n) > 0;
    });
    std::vector<int> mons;
    mons.reserve(idx.size() * s);
    std::vector<FieldElement> coeffs;
    coeffs.reserve(idx.size());
    for (std::size_t i : idx) {
      mons.insert(mons.end(), &mons_[i * s], &mons_[i * s] + s);
      coeffs.push_back(std::move(coeffs_[i]));
    }
    return Polynomial::from_raw(std::move(ring), std::move(mons), std::move(coeffs));
  }

 private:
  std::size_t hash(const int* e) const {
    std::size_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < n_; ++i) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(e[i]));
      h *= 1099511628211ULL;
    }
    return h ^ (h >> 29);
  }

  void grow() {
    table_.assign(table_.size() * 2, -1);
    const std::size_t mask = table_.size() - 1;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      std::size_t i = hash(&mons_[k * stride_ + n_]) & mask;
      while (table_[i] >= 0) i = (i + 1) & mask;
      table_[i] = static_cast<long>(k);
    }
  }

  const Ring& ring_;
  std::size_t n_, stride_;
  std::vector<long> table_;
  std::vector<int> mons_;
  std::vector<FieldElement> coeffs_;
};

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::from_raw(RingPtr ring, std::vector<int> mons, std::vector<FieldElement> coeffs) {
  Polynomial p(std::move(ring));
  p.mons_ = std::move(mons);
  p.coeffs_ = std::move(coeffs);
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, const FieldElement& c) {
  return monomial(ring, c, Term::one(ring->nvars()));
}

Polynomial Polynomial::constant(RingPtr ring, long c) {
  FieldElement v(ring->field(), c);
  return constant(std::move(ring), v);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  const std::size_t n = ring->nvars();
  return monomial(ring, FieldElement::one(ring->field()), Term::variable(n, i));
}

Polynomial Polynomial::monomial(RingPtr ring, const FieldElement& c, const Term& t) {
  if (t.size() != ring->nvars()) throw RingMismatch("term length differs from ring");
  if (!(c.field() == ring->field())) throw FieldMismatch("coefficient field differs from ring field");
  Polynomial p(ring);
  if (c.is_zero()) return p;
  p.mons_.resize(ring->stride());
  ring->encode(t.exponents(), p.mons_.data());
  p.coeffs_.push_back(c);
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, const std::vector<std::pair<Term, FieldElement>>& terms) {
  Accumulator acc(*ring, terms.size());
  std::vector<int> buf(ring->stride());
  for (const auto& [t, c] : terms) {
    if (t.size() != ring->nvars()) throw RingMismatch("term length differs from ring");
    ring->encode(t.exponents(), buf.data());
    acc.add(buf.data(), c);
  }
  return acc.finish(std::move(ring));
}

bool Polynomial::is_constant() const {
  if (coeffs_.empty()) return true;
  if (coeffs_.size() > 1) return false;
  auto e = exponents(0);
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

std::span<const int> Polynomial::encoded(std::size_t i) const {
  const std::size_t s = ring_->stride();
  return {&mons_[i * s], s};
}

std::span<const int> Polynomial::exponents(std::size_t i) const {
  const std::size_t n = ring_->nvars();
  return {&mons_[i * 2 * n + n], n};
}

Term Polynomial::term(std::size_t i) const {
  auto e = exponents(i);
  return Term(std::vector<int>(e.begin(), e.end()));
}

Term Polynomial::leading_term() const {
  if (is_zero()) throw ZeroPolynomial("leading term of zero");
  return term(0);
}

const FieldElement& Polynomial::leading_coeff() const {
  if (is_zero()) throw ZeroPolynomial("leading coefficient of zero");
  return coeffs_[0];
}

std::span<const int> Polynomial::leading_exponents() const {
  if (is_zero()) throw ZeroPolynomial("leading term of zero");
  return exponents(0);
}

Polynomial Polynomial::tail() const {
  if (is_zero()) throw ZeroPolynomial("tail of zero");
  Polynomial p(ring_);
  p.mons_.assign(mons_.begin() + ring_->stride(), mons_.end());
  p.coeffs_.assign(coeffs_.begin() + 1, coeffs_.end());
  return p;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!ring_ || !o.ring_) throw RingMismatch("polynomial without ring");
  if (ring_ != o.ring_ && !ring_->same_as(*o.ring_)) throw RingMismatch("polynomials live in different rings");
}

void Polynomial::add_scaled(const FieldElement& c, std::span<const int> t, const Polynomial& p) {
  check_ring(p);
  if (c.is_zero() || p.is_zero()) return;
  const std::size_t n = ring_->nvars(), s = 2 * n;
  const std::size_t n1 = coeffs_.size(), n2 = p.coeffs_.size();
  std::vector<int> out_m;
  out_m.reserve(mons_.size() + p.mons_.size());
  std::vector<FieldElement> out_c;
  out_c.reserve(n1 + n2);
  std::vector<int> prod(s);
  auto load = [&](std::size_t j) {
    const int* q = &p.mons_[j * s];
    for (std::size_t k = 0; k < s; ++k) prod[k] = q[k] + t[k];
  };
  std::size_t i = 0, j = 0;
  if (n2) load(0);
  while (i < n1 || j < n2) {
    int cmp;
    if (i >= n1) {
      cmp = -1;
    } else if (j >= n2) {
      cmp = 1;
    } else {
      cmp = compare_encoded(&mons_[i * s], prod.data(), n);
    }
    if (cmp > 0) {
      out_m.insert(out_m.end(), &mons_[i * s], &mons_[i * s] + s);
      out_c.push_back(std::move(coeffs_[i]));
      ++i;
    } else if (cmp < 0) {
      out_m.insert(out_m.end(), prod.begin(), prod.end());
      out_c.push_back(c * p.coeffs_[j]);
      if (++j < n2) load(j);
    } else {
      FieldElement v = std::move(coeffs_[i]);
      v += c * p.coeffs_[j];
      if (!v.is_zero()) {
        out_m.insert(out_m.end(), prod.begin(), prod.end());
        out_c.push_back(std::move(v));
      }
      ++i;
      if (++j < n2) load(j);
    }
  }
  mons_ = std::move(out_m);
  coeffs_ = std::move(out_c);
}

void Polynomial::add_scaled(const FieldElement& c, const Term& t, const Polynomial& p) {
  std::vector<int> enc(ring_->stride());
  ring_->encode(t.exponents(), enc.data());
  add_scaled(c, std::span<const int>(enc), p);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (!ring_) ring_ = o.ring_;
  if (o.is_zero()) return *this;
  std::vector<int> one(ring_->stride(), 0);
  add_scaled(FieldElement::one(field()), std::span<const int>(one), o);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (!ring_) ring_ = o.ring_;
  if (o.is_zero()) return *this;
  std::vector<int> one(ring_->stride(), 0);
  add_scaled(-FieldElement::one(field()), std::span<const int>(one), o);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator*=(const FieldElement& c) {
  if (c.is_zero()) {
    mons_.clear();
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  const Polynomial& small = a.num_terms() <= b.num_terms() ? a : b;
  const Polynomial& big = a.num_terms() <= b.num_terms() ? b : a;
  Polynomial r(a.ring_);
  if (small.is_zero()) return r;
  if (small.num_terms() <= 4) {
    for (std::size_t i = 0; i < small.num_terms(); ++i) r.add_scaled(small.coeffs_[i], small.encoded(i), big);
    return r;
  }
  const std::size_t s = a.ring_->stride();
  Accumulator acc(*a.ring_, std::min<std::size_t>(small.num_terms() * big.num_terms(), 1u << 20));
  std::vector<int> prod(s);
  for (std::size_t i = 0; i < small.num_terms(); ++i) {
    const int* x = &small.mons_[i * s];
    for (std::size_t j = 0; j < big.num_terms(); ++j) {
      const int* y = &big.mons_[j * s];
      for (std::size_t k = 0; k < s; ++k) prod[k] = x[k] + y[k];
      acc.add(prod.data(), small.coeffs_[i] * big.coeffs_[j]);
    }
  }
  return acc.finish(a.ring_);
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  Polynomial r = *this;
  r.make_monic();
  return r;
}

void Polynomial::make_monic() {
  if (is_zero() || coeffs_[0].is_one()) return;
  FieldElement inv = coeffs_[0].inverse();
  for (auto& c : coeffs_) c *= inv;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& g) const {
  check_ring(g);
  if (g.is_zero()) throw DivisionByZero("division by the zero polynomial");
  Polynomial q(ring_), r = *this;
  const std::size_t n = ring_->nvars(), s = 2 * n;
  const FieldElement inv = g.coeffs_[0].inverse();
  std::vector<int> t(s);
  std::vector<int> q_mons;
  std::vector<FieldElement> q_coeffs;
  while (!r.is_zero()) {
    const int* lr = &r.mons_[0];
    const int* lg = &g.mons_[0];
    for (std::size_t k = 0; k < s; ++k) {
      t[k] = lr[k] - lg[k];
      if (k >= n && t[k] < 0) return std::nullopt;
    }
    FieldElement c = r.coeffs_[0] * inv;
    q_mons.insert(q_mons.end(), t.begin(), t.end());
    q_coeffs.push_back(c);
    r.add_scaled(-c, std::span<const int>(t), g);
  }
  // Quotient terms are produced in strictly decreasing order.
  return from_raw(ring_, std::move(q_mons), std::move(q_coeffs));
}

Polynomial Polynomial::divide_by_term(const Term& t) const {
  std::vector<int> enc(ring_->stride());
  ring_->encode(t.exponents(), enc.data());
  Polynomial r = *this;
  const std::size_t n = ring_->nvars(), s = 2 * n;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    for (std::size_t k = 0; k < s; ++k) {
      r.mons_[i * s + k] -= enc[k];
      if (k >= n && r.mons_[i * s + k] < 0) throw InvalidArgument("term does not divide polynomial");
    }
  }
  return r;
}

Polynomial Polynomial::map_variables(const RingPtr& target, std::span<const std::size_t> var_map) const {
  if (var_map.size() != nvars()) throw InvalidArgument("variable map has wrong length");
  if (!(target->field() == field())) throw FieldMismatch("target ring has a different field");
  Accumulator acc(*target, num_terms());
  std::vector<int> e(target->nvars()), enc(target->stride());
  for (std::size_t i = 0; i < num_terms(); ++i) {
    std::fill(e.begin(), e.end(), 0);
    auto src = exponents(i);
    for (std::size_t k = 0; k < src.size(); ++k) e.at(var_map[k]) += src[k];
    target->encode(e, enc.data());
    acc.add(enc.data(), coeffs_[i]);
  }
  return acc.finish(target);
}

Polynomial Polynomial::substitute(const RingPtr& target, std::span<const Polynomial> images) const {
  if (images.size() != nvars()) throw InvalidArgument("substitution needs one image per variable");
  Geobucket result(target);
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t v, int e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  for (std::size_t i = 0; i < num_terms(); ++i) {
    auto e = exponents(i);
    Polynomial m = constant(target, coeffs_[i]);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v]) m = m * power(v, e[v]);
    }
    result.add(m);
  }
  return result.value();
}

Polynomial Polynomial::reorder(const RingPtr& target) const {
  if (target->nvars() != nvars()) throw RingMismatch("reorder between rings of different size");
  std::vector<std::size_t> id(nvars());
  std::iota(id.begin(), id.end(), 0);
  return map_variables(target, id);
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const auto& names = ring_->names();
  for (std::size_t i = 0; i < num_terms(); ++i) {
    const FieldElement& c = coeffs_[i];
    auto e = exponents(i);
    bool neg = c.is_negative();
    FieldElement a = neg ? -c : c;
    if (i == 0) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    bool constant_term = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    bool first = true;
    if (!a.is_one() || constant_term) {
      os << a.to_string();
      first = false;
    }
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (!e[v]) continue;
      if (!first) os << "*";
      os << names[v];
      if (e[v] > 1) os << "^" << e[v];
      first = false;
    }
  }
  return os.str();
}

std::size_t Polynomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int x : mons_) h = (h ^ static_cast<unsigned>(x)) * 0x100000001b3ULL;
  for (const auto& c : coeffs_) h = (h ^ std::hash<std::string>{}(c.to_string())) * 0x100000001b3ULL;
  return h;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (!a.ring_ || !b.ring_) return false;
  a.check_ring(b);
  return a.mons_ == b.mons_ && a.coeffs_ == b.coeffs_;
}

// ---------------------------------------------------------------- Geobucket

namespace {

std::size_t bucket_capacity(std::size_t i) { return std::size_t{8} << (2 * i); }

}  // namespace

Geobucket::Geobucket(RingPtr ring) : ring_(std::move(ring)), one_(ring_->stride(), 0) {}

Geobucket::Geobucket(const Polynomial& p) : Geobucket(p.ring()) { add(p); }

void Geobucket::merge(Bucket& into, Bucket& from) {
  const std::size_t n = ring_->nvars(), s = 2 * n;
  if (into.size() == 0) {
    std::swap(into, from);
    from = Bucket{};
    return;
  }
  if (from.size() == 0) return;
  Bucket out;
  out.mons.reserve((into.size() + from.size()) * s);
  out.coeffs.reserve(into.size() + from.size());
  std::size_t i = into.start, j = from.start;
  const std::size_t n1 = into.coeffs.size(), n2 = from.coeffs.size();
  while (i < n1 || j < n2) {
    int cmp = i >= n1 ? -1 : j >= n2 ? 1 : compare_encoded(&into.mons[i * s], &from.mons[j * s], n);
    if (cmp > 0) {
      out.mons.insert(out.mons.end(), &into.mons[i * s], &into.mons[i * s] + s);
      out.coeffs.push_back(std::move(into.coeffs[i++]));
    } else if (cmp < 0) {
      out.mons.insert(out.mons.end(), &from.mons[j * s], &from.mons[j * s] + s);
      out.coeffs.push_back(std::move(from.coeffs[j++]));
    } else {
      FieldElement v = std::move(into.coeffs[i]);
      v += from.coeffs[j];
      if (!v.is_zero()) {
        out.mons.insert(out.mons.end(), &into.mons[i * s], &into.mons[i * s] + s);
        out.coeffs.push_back(std::move(v));
      }
      ++i;
      ++j;
    }
  }
  into = std::move(out);
  from = Bucket{};
}

void Geobucket::add(const FieldElement& c, std::span<const int> t, const Polynomial& p, std::size_t skip) {
  if (c.is_zero() || p.num_terms() <= skip) return;
  if (p.ring_ != ring_ && !p.ring_->same_as(*ring_)) throw RingMismatch("geobucket ring differs");
  const std::size_t s = ring_->stride();
  Bucket b;
  b.mons.resize((p.num_terms() - skip) * s);
  b.coeffs.reserve(p.num_terms() - skip);
  for (std::size_t k = skip; k < p.num_terms(); ++k) {
    const int* src = &p.mons_[k * s];
    int* dst = &b.mons[(k - skip) * s];
    for (std::size_t q = 0; q < s; ++q) dst[q] = src[q] + t[q];
    b.coeffs.push_back(c.is_one() ? p.coeffs_[k] : c * p.coeffs_[k]);
  }
  std::size_t idx = 0;
  while (bucket_capacity(idx) < b.size()) ++idx;
  for (;;) {
    if (buckets_.size() <= idx) buckets_.resize(idx + 1);
    merge(buckets_[idx], b);
    if (buckets_[idx].size() <= bucket_capacity(idx)) break;
    std::swap(b, buckets_[idx]);
    ++idx;
  }
}

bool Geobucket::pop_leading(std::vector<int>& out, FieldElement& coeff) {
  const std::size_t n = ring_->nvars(), s = 2 * n;
  for (;;) {
    int best = -1;
    for (std::size_t i = 0; i < buckets_.size(); ++i) {
      const Bucket& b = buckets_[i];
      if (b.size() == 0) continue;
      if (best < 0 ||
          compare_encoded(&b.mons[b.start * s], &buckets_[best].mons[buckets_[best].start * s], n) > 0) {
        best = static_cast<int>(i);
      }
    }
    if (best < 0) return false;
    Bucket& lead = buckets_[best];
    out.assign(&lead.mons[lead.start * s], &lead.mons[lead.start * s] + s);
    coeff = std::move(lead.coeffs[lead.start]);
    ++lead.start;
    for (std::size_t i = 0; i < buckets_.size(); ++i) {
      Bucket& b = buckets_[i];
      if (static_cast<int>(i) == best || b.size() == 0) continue;
      if (compare_encoded(&b.mons[b.start * s], out.data(), n) == 0) {
        coeff += b.coeffs[b.start];
        ++b.start;
      }
    }
    if (!coeff.is_zero()) return true;
  }
}

bool Geobucket::is_zero() {
  std::vector<int> m;
  FieldElement c;
  if (!pop_leading(m, c)) return true;
  Bucket b;
  b.mons = std::move(m);
  b.coeffs.push_back(std::move(c));
  if (buckets_.empty()) buckets_.resize(1);
  merge(buckets_[0], b);
  return false;
}

Polynomial Geobucket::value() {
  Bucket all;
  for (auto& b : buckets_) merge(all, b);
  buckets_.clear();
  std::vector<int> mons(all.mons.begin() + all.start * ring_->stride(), all.mons.end());
  std::vector<FieldElement> coeffs(std::make_move_iterator(all.coeffs.begin() + all.start),
                                   std::make_move_iterator(all.coeffs.end()));
  return Polynomial::from_raw(ring_, std::move(mons), std::move(coeffs));
}

// ---------------------------------------------------------------- free functions

std::pair<Term, FieldElement> leading(const Polynomial& f) { return {f.leading_term(), f.leading_coeff()}; }

SaturatedPoly saturate_poly(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero() || g.is_constant()) throw InvalidArgument("saturating element must be a nonconstant polynomial");
  if (f.is_zero()) return {f, 0};
  if (g.is_monomial()) {
    const Term t = g.leading_term();
    unsigned k = ~0u;
    for (std::size_t i = 0; i < f.num_terms() && k; ++i) {
      auto e = f.exponents(i);
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (t[v]) k = std::min<unsigned>(k, static_cast<unsigned>(e[v] / t[v]));
      }
    }
    if (k == 0) return {f, 0};
    std::vector<int> ek(t.exponents());
    for (int& x : ek) x *= static_cast<int>(k);
    Polynomial r = f.divide_by_term(Term(ek));
    r *= g.leading_coeff().inverse().pow(k);
    return {std::move(r), k};
  }
  SaturatedPoly out{f, 0};
  while (auto q = out.value.divide_exact(g)) {
    out.value = std::move(*q);
    ++out.exponent;
  }
  return out;
}

std::optional<std::vector<long>> homogeneous_degree(const Polynomial& f, const Grading& w) {
  if (f.is_zero()) return std::vector<long>{};
  auto d = w.degree(f.exponents(0));
  for (std::size_t i = 1; i < f.num_terms(); ++i) {
    if (w.degree(f.exponents(i)) != d) return std::nullopt;
  }
  return d;
}

bool is_homogeneous(const Polynomial& f, const Grading& w) { return homogeneous_degree(f, w).has_value(); }

// ---------------------------------------------------------------- parser

namespace {

class ExprParser {
 public:
  ExprParser(const RingPtr& ring, std::string_view text, const Bindings* bindings, int line, int column)
      : ring_(ring), text_(text), bindings_(bindings), line0_(line), col0_(column) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected polynomial expression");
    Polynomial p = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at = std::string::npos) const {
    auto [l, c] = position(at == std::string::npos ? pos_ : at);
    throw ParseError(l, c, msg);
  }

  std::pair<int, int> position(std::size_t at) const {
    int l = line0_, c = col0_;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++l;
        c = 1;
      } else {
        ++c;
      }
    }
    return {l, c};
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool neg = accept('-');
    if (!neg) accept('+');
    Polynomial t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (peek_is('/')) {
        const std::size_t at = pos_;
        accept('/');
        Polynomial d = factor();
        if (!d.is_constant()) fail("division only by nonzero constants", at);
        if (d.is_zero()) fail("division by zero", at);
        acc *= d.coeff(0).inverse();
      } else {
        return acc;
      }
    }
  }

  bool peek_is(char ch) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == ch;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (ch == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial::constant(ring_, FieldElement::parse(ring_->field(), text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view name = text_.substr(start, pos_ - start);
      if (auto idx = ring_->index_of(name)) return Polynomial::variable(ring_, *idx);
      if (bindings_) {
        if (auto it = bindings_->find(name); it != bindings_->end()) return it->second;
      }
      auto [l, c] = position(start);
      throw UndeclaredVariable(l, c, std::string(name));
    }
    fail(std::string("unexpected '") + ch + "'");
  }

  RingPtr ring_;
  std::string_view text_;
  const Bindings* bindings_;
  int line0_, col0_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, const Bindings* bindings, int line,
                            int column) {
  return ExprParser(ring, text, bindings, line, column).parse();
}

}  // namespace sagbisat
