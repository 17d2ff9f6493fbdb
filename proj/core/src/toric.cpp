#include "sagbisat/toric.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "sagbisat/error.hpp"

namespace sagbisat {

namespace {

std::uint64_t mask_of(const int* e, std::size_t n) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (e[i] > 0) m |= std::uint64_t{1} << (i % 64);
  }
  return m;
}

bool divides(const int* a, const int* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool coprime(const int* a, const int* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

/// Pads the matrix rows of `block` into columns `cols` of an n-wide matrix.
void embed(IntMatrix& out, const IntMatrix& block, const std::vector<std::size_t>& cols, std::size_t n) {
  for (const auto& r : block) {
    std::vector<long> row(n, 0);
    for (std::size_t k = 0; k < cols.size(); ++k) row[cols[k]] = r[k];
    out.push_back(std::move(row));
  }
}

/// Completes independent rows to a nonsingular matrix with -e_k from the right.
IntMatrix complete_degrev(IntMatrix rows, std::size_t n) {
  IntMatrix m;
  for (auto& r : rows) {
    IntMatrix t = m;
    t.push_back(r);
    if (matrix_rank(t) > m.size()) m = std::move(t);
  }
  for (std::size_t k = n; k-- > 0 && m.size() < n;) {
    std::vector<long> r(n, 0);
    r[k] = -1;
    IntMatrix t = m;
    t.push_back(r);
    if (matrix_rank(t) > m.size()) m = std::move(t);
  }
  return m;
}

/// Buchberger on the pure-difference ideal <x_i - t_i> in K[x_1..x_r, a_0..a_n],
/// eliminating the a-block. Binomials are stored as encoded exponent pairs;
/// common monomial factors are cancelled since the ideal is prime.
class BinomialEngine {
 public:
  BinomialEngine(const std::vector<Term>& terms, IntMatrix x_order, std::vector<long> deg_row, long bound)
      : r_(terms.size()), m_(terms.empty() ? 0 : terms[0].size()), deg_(std::move(deg_row)), bound_(bound) {
    const std::size_t n = r_ + m_;
    std::vector<std::size_t> xs(r_), as(m_);
    for (std::size_t i = 0; i < r_; ++i) xs[i] = i;
    for (std::size_t j = 0; j < m_; ++j) as[j] = r_ + j;
    IntMatrix mat;
    IntMatrix a_block;
    a_block.emplace_back(m_, 1);
    for (std::size_t k = m_; k-- > 1;) {
      std::vector<long> row(m_, 0);
      row[k] = -1;
      a_block.push_back(row);
    }
    embed(mat, a_block, as, n);
    embed(mat, x_order, xs, n);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    ring_ = std::make_shared<const Ring>(Field::rationals(), names, TermOrdering::from_matrix(mat));
    n_ = n;
    s_ = 2 * n;
    for (std::size_t i = 0; i < r_; ++i) {
      std::vector<int> u(n, 0), v(n, 0);
      u[i] = 1;
      for (std::size_t j = 0; j < m_; ++j) v[r_ + j] = terms[i][j];
      inputs_.emplace_back(encode(u), encode(v));
    }
  }

  void run() {
    for (auto& [u, v] : inputs_) {
      if (degree(u.data()) > bound_) continue;
      add_reduced(u, v);
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        if (less(pairs_[k], pairs_[best])) best = k;
      }
      Pair p = std::move(pairs_[best]);
      pairs_[best] = std::move(pairs_.back());
      pairs_.pop_back();
      if (p.degree > bound_) continue;
      std::vector<int> u(s_), v(s_);
      const auto& bi = basis_[p.i];
      const auto& bj = basis_[p.j];
      for (std::size_t k = 0; k < s_; ++k) {
        u[k] = p.lcm[k] - bi.lead[k] + bi.trail[k];
        v[k] = p.lcm[k] - bj.lead[k] + bj.trail[k];
      }
      add_reduced(u, v);
    }
  }

  /// Reduced elements supported on the x-block, as exponent vectors of length r.
  std::vector<Binomial> x_binomials() const {
    std::vector<Binomial> out;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (!active_[k]) continue;
      const auto& b = basis_[k];
      bool x_only = true;
      for (std::size_t j = 0; j < m_ && x_only; ++j) {
        if (b.lead[n_ + r_ + j] || b.trail[n_ + r_ + j]) x_only = false;
      }
      if (!x_only) continue;
      std::vector<int> trail = normal_form(b.trail, k);
      Binomial bin{std::vector<int>(b.lead.begin() + n_, b.lead.begin() + n_ + r_),
                   std::vector<int>(trail.begin() + n_, trail.begin() + n_ + r_)};
      out.push_back(std::move(bin));
    }
    std::sort(out.begin(), out.end(), [&](const Binomial& a, const Binomial& b) {
      long da = x_degree(a.lead), db = x_degree(b.lead);
      if (da != db) return da < db;
      return compare_encoded(encode_x(a.lead).data(), encode_x(b.lead).data(), n_) < 0;
    });
    return out;
  }

  /// Normal form of the a-monomial t0; x-exponents if it lies in K[x].
  std::optional<std::vector<int>> represent(const Term& t0) const {
    std::vector<int> e(n_, 0);
    for (std::size_t j = 0; j < m_; ++j) e[r_ + j] = t0[j];
    std::vector<int> nf = normal_form(encode(e), basis_.size());
    for (std::size_t j = 0; j < m_; ++j) {
      if (nf[n_ + r_ + j]) return std::nullopt;
    }
    return std::vector<int>(nf.begin() + n_, nf.begin() + n_ + r_);
  }

 private:
  struct Entry {
    std::vector<int> lead, trail;
    std::uint64_t mask;
  };
  struct Pair {
    std::size_t i, j;
    std::vector<int> lcm;
    long degree;
  };

  std::vector<int> encode(const std::vector<int>& e) const {
    std::vector<int> out(s_);
    ring_->encode(e, out.data());
    return out;
  }
  std::vector<int> encode_x(const std::vector<int>& x) const {
    std::vector<int> e(n_, 0);
    std::copy(x.begin(), x.end(), e.begin());
    return encode(e);
  }
  long degree(const int* enc) const {
    long d = 0;
    for (std::size_t k = 0; k < n_; ++k) d += deg_[k] * enc[n_ + k];
    return d;
  }
  long x_degree(const std::vector<int>& x) const {
    long d = 0;
    for (std::size_t k = 0; k < x.size(); ++k) d += deg_[k] * x[k];
    return d;
  }

  bool less(const Pair& a, const Pair& b) const {
    if (a.degree != b.degree) return a.degree < b.degree;
    int c = compare_encoded(a.lcm.data(), b.lcm.data(), n_);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  }

  // Reduces u with the active elements, skipping index `skip`.
  std::vector<int> normal_form(std::vector<int> u, std::size_t skip) const {
    for (;;) {
      const std::uint64_t mu = mask_of(&u[n_], n_);
      bool reduced = false;
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (!active_[k] || k == skip) continue;
        const auto& b = basis_[k];
        if ((b.mask & ~mu) != 0 || !divides(&b.lead[n_], &u[n_], n_)) continue;
        for (std::size_t q = 0; q < s_; ++q) u[q] += b.trail[q] - b.lead[q];
        reduced = true;
        break;
      }
      if (!reduced) return u;
    }
  }

  void add_reduced(std::vector<int> u, std::vector<int> v) {
    for (;;) {
      u = normal_form(std::move(u), basis_.size());
      v = normal_form(std::move(v), basis_.size());
      if (u == v) return;
      std::vector<int> g(n_);
      bool common = false;
      for (std::size_t k = 0; k < n_; ++k) {
        g[k] = std::min(u[n_ + k], v[n_ + k]);
        common |= g[k] > 0;
      }
      if (!common) break;
      auto ge = encode(g);
      for (std::size_t q = 0; q < s_; ++q) {
        u[q] -= ge[q];
        v[q] -= ge[q];
      }
    }
    if (compare_encoded(u.data(), v.data(), n_) < 0) std::swap(u, v);
    insert(Entry{std::move(u), std::move(v), 0});
  }

  void insert(Entry h) {
    h.mask = mask_of(&h.lead[n_], n_);
    const std::size_t hi = basis_.size();
    basis_.push_back(std::move(h));
    active_.push_back(true);
    const int* lh = &basis_[hi].lead[n_];

    auto lcm_of = [&](std::size_t a, std::size_t b) {
      std::vector<int> e(n_);
      for (std::size_t k = 0; k < n_; ++k) e[k] = std::max(basis_[a].lead[n_ + k], basis_[b].lead[n_ + k]);
      return encode(e);
    };
    std::vector<Pair> c;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active_[g]) continue;
      Pair p{g, hi, lcm_of(g, hi), 0};
      p.degree = degree(p.lcm.data());
      c.push_back(std::move(p));
    }
    auto is_coprime = [&](const Pair& p) { return coprime(&basis_[p.i].lead[n_], lh, n_); };
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = is_coprime(p);
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q) {
          if (divides(&c[q].lcm[n_], &p.lcm[n_], n_)) keep = false;
        }
        for (std::size_t q = 0; q < d.size() && keep; ++q) {
          if (divides(&d[q].lcm[n_], &p.lcm[n_], n_)) keep = false;
        }
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      if (divides(lh, &p.lcm[n_], n_)) {
        if (lcm_of(p.i, hi) != p.lcm && lcm_of(p.j, hi) != p.lcm) continue;
      }
      kept.push_back(std::move(p));
    }
    for (auto& p : d) {
      if (!is_coprime(p)) kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && divides(lh, &basis_[g].lead[n_], n_)) active_[g] = false;
    }
  }

  std::size_t r_, m_, n_ = 0, s_ = 0;
  std::vector<long> deg_;
  long bound_;
  RingPtr ring_;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> inputs_;
  std::vector<Entry> basis_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

void check_terms(const std::vector<Term>& terms) {
  for (const auto& t : terms) {
    if (t.size() != terms[0].size()) throw InvalidArgument("terms of different lengths");
  }
}

Grading induced_grading(const std::vector<Term>& terms, const Grading& w) {
  IntMatrix rows(w.num_rows(), std::vector<long>(terms.size()));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto d = w.degree(terms[i]);
    for (std::size_t k = 0; k < d.size(); ++k) rows[k][i] = d[k];
  }
  return Grading(rows);
}

// Constant terms t_i = 1 contribute x_i - 1; the rest go through the engine.
BinomialIdeal compute(const std::vector<Term>& terms, const Grading& w, long bound) {
  BinomialIdeal out{terms, {}, Grading()};
  if (terms.empty()) return out;
  check_terms(terms);
  out.induced = induced_grading(terms, w);
  const std::size_t r = terms.size();
  std::vector<Term> live;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < r; ++i) {
    if (terms[i].is_one()) {
      std::vector<int> lead(r, 0);
      lead[i] = 1;
      out.binomials.push_back({lead, std::vector<int>(r, 0)});
    } else {
      live.push_back(terms[i]);
      where.push_back(i);
    }
  }
  if (live.empty()) return out;
  Grading sub = induced_grading(live, w);
  if (!sub.is_positive()) throw NotPositiveGrading("induced grading on relation variables is not positive");
  IntMatrix x_order = complete_degrev(sub.rows(), live.size());
  std::vector<long> deg(live.size() + live[0].size());
  for (std::size_t i = 0; i < live.size(); ++i) deg[i] = sub.row(0)[i];
  for (std::size_t j = 0; j < live[0].size(); ++j) deg[live.size() + j] = w.row(0)[j];
  BinomialEngine engine(live, std::move(x_order), std::move(deg), bound);
  engine.run();
  for (const auto& b : engine.x_binomials()) {
    long d = 0;
    for (std::size_t i = 0; i < live.size(); ++i) d += sub.row(0)[i] * b.lead[i];
    if (d > bound) continue;
    Binomial full{std::vector<int>(r, 0), std::vector<int>(r, 0)};
    for (std::size_t k = 0; k < where.size(); ++k) {
      full.lead[where[k]] = b.lead[k];
      full.trail[where[k]] = b.trail[k];
    }
    out.binomials.push_back(std::move(full));
  }
  return out;
}

}  // namespace

std::vector<Polynomial> BinomialIdeal::polynomials(const RingPtr& xring) const {
  if (xring->nvars() != terms.size()) throw RingMismatch("relation ring needs one variable per term");
  std::vector<Polynomial> out;
  const FieldElement one = FieldElement::one(xring->field());
  for (const auto& b : binomials) {
    Polynomial p = Polynomial::monomial(xring, one, Term(b.lead));
    p -= Polynomial::monomial(xring, one, Term(b.trail));
    out.push_back(p.monic());
  }
  return out;
}

BinomialIdeal toric_ideal(const std::vector<Term>& terms, const std::optional<Grading>& w) {
  const std::size_t n = terms.empty() ? 0 : terms[0].size();
  return compute(terms, w ? *w : Grading::standard(n), std::numeric_limits<long>::max());
}

BinomialIdeal toric_generators_up_to(const std::vector<Term>& terms, const Grading& w, long d) {
  return compute(terms, w, d);
}

std::optional<std::vector<int>> monomial_membership(const Term& t0, const std::vector<Term>& terms) {
  if (t0.is_one()) return std::vector<int>(terms.size(), 0);
  std::vector<Term> dividing;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].is_one() && terms[i].divides(t0)) {
      dividing.push_back(terms[i]);
      where.push_back(i);
    }
  }
  if (dividing.empty()) return std::nullopt;
  IntMatrix lex(dividing.size(), std::vector<long>(dividing.size(), 0));
  for (std::size_t i = 0; i < dividing.size(); ++i) lex[i][i] = 1;
  std::vector<long> deg(dividing.size() + t0.size());
  for (std::size_t i = 0; i < dividing.size(); ++i) deg[i] = dividing[i].total_degree();
  for (std::size_t j = 0; j < t0.size(); ++j) deg[dividing.size() + j] = 1;
  BinomialEngine engine(dividing, lex, deg, std::numeric_limits<long>::max());
  engine.run();
  auto alpha = engine.represent(t0);
  if (!alpha) return std::nullopt;
  std::vector<int> full(terms.size(), 0);
  for (std::size_t k = 0; k < where.size(); ++k) full[where[k]] = (*alpha)[k];
  return full;
}

// ---------------------------------------------------------------- DFS route

MonomialRepresenter::MonomialRepresenter(std::vector<Term> terms) : terms_(std::move(terms)) {}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) h = (h ^ static_cast<unsigned>(x)) * 1099511628211ULL;
    return h;
  }
};

class Search {
 public:
  Search(const std::vector<const Term*>& terms, std::size_t n) : terms_(terms), n_(n) {}

  bool run(std::size_t i, std::vector<int>& rest, std::vector<int>& alpha) {
    if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) return true;
    if (i == terms_.size()) return false;
    std::vector<int> key = rest;
    key.push_back(static_cast<int>(i));
    if (failed_.count(key)) return false;
    const Term& t = *terms_[i];
    int maxk = std::numeric_limits<int>::max();
    for (std::size_t v = 0; v < n_; ++v) {
      if (t[v]) maxk = std::min(maxk, rest[v] / t[v]);
    }
    for (int k = 0; k <= maxk; ++k) {
      if (k > 0) {
        for (std::size_t v = 0; v < n_; ++v) rest[v] -= t[v];
      }
      alpha[i] = k;
      if (run(i + 1, rest, alpha)) return true;
    }
    for (std::size_t v = 0; v < n_; ++v) rest[v] += t[v] * maxk;
    alpha[i] = 0;
    failed_.insert(std::move(key));
    return false;
  }

 private:
  const std::vector<const Term*>& terms_;
  std::size_t n_;
  std::unordered_set<std::vector<int>, VecHash> failed_;
};

}  // namespace

std::optional<std::vector<int>> MonomialRepresenter::represent(std::span<const int> t0) const {
  const std::size_t n = t0.size();
  std::vector<const Term*> dividing;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (t.is_one()) continue;
    bool div = true;
    for (std::size_t v = 0; v < n && div; ++v) div = t[v] <= t0[v];
    if (div) {
      dividing.push_back(&t);
      where.push_back(i);
    }
  }
  std::vector<int> rest(t0.begin(), t0.end()), alpha(dividing.size(), 0);
  Search s(dividing, n);
  if (!s.run(0, rest, alpha)) return std::nullopt;
  std::vector<int> full(terms_.size(), 0);
  for (std::size_t k = 0; k < where.size(); ++k) full[where[k]] = alpha[k];
  return full;
}

}  // namespace sagbisat
