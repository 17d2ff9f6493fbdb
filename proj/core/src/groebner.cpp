#include "sagbisat/groebner.hpp"

#include <algorithm>
#include <memory>

#include "sagbisat/error.hpp"

namespace sagbisat {

namespace {

std::uint64_t support_mask(std::span<const int> e) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0) m |= std::uint64_t{1} << (i % 64);
  }
  return m;
}

bool divides(std::span<const int> a, std::span<const int> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

struct Divisor {
  const Polynomial* poly;
  std::uint64_t mask;
  FieldElement inv_lc;
};

class Reducer {
 public:
  explicit Reducer(const RingPtr& ring) : ring_(ring) {}

  void add(const Polynomial& p) {
    if (p.is_zero()) return;
    divisors_.push_back({&p, support_mask(p.leading_exponents()), p.leading_coeff().inverse()});
  }

  const Divisor* find(std::span<const int> encoded) const {
    const std::size_t n = ring_->nvars();
    std::span<const int> e = encoded.subspan(n, n);
    const std::uint64_t m = support_mask(e);
    for (const auto& d : divisors_) {
      if ((d.mask & ~m) == 0 && divides(d.poly->leading_exponents(), e)) return &d;
    }
    return nullptr;
  }

  // Full reduction; when `tail_only` the leading term of f is kept as is.
  Polynomial reduce(const Polynomial& f, bool top_only = false) const {
    if (f.is_zero()) return f;
    const std::size_t s = ring_->stride();
    Geobucket gb(f);
    std::vector<int> m, t(s);
    FieldElement c;
    std::vector<int> out_m;
    std::vector<FieldElement> out_c;
    while (gb.pop_leading(m, c)) {
      if (const Divisor* d = find(m)) {
        auto lt = d->poly->encoded(0);
        for (std::size_t k = 0; k < s; ++k) t[k] = m[k] - lt[k];
        gb.add(-(c * d->inv_lc), t, *d->poly, 1);
        continue;
      }
      out_m.insert(out_m.end(), m.begin(), m.end());
      out_c.push_back(std::move(c));
      if (top_only) {
        Polynomial rest = gb.value();
        out_m.insert(out_m.end(), rest.raw_monomials().begin(), rest.raw_monomials().end());
        for (std::size_t k = 0; k < rest.num_terms(); ++k) out_c.push_back(rest.coeff(k));
        break;
      }
    }
    return Polynomial::from_raw(ring_, std::move(out_m), std::move(out_c));
  }

 private:
  RingPtr ring_;
  std::vector<Divisor> divisors_;
};

struct Pair {
  std::size_t i, j;
  std::vector<int> lcm;  // encoded
  long degree;
};

std::vector<int> encoded_lcm(const Ring& ring, const Polynomial& a, const Polynomial& b) {
  auto ea = a.leading_exponents(), eb = b.leading_exponents();
  std::vector<int> e(ea.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::max(ea[k], eb[k]);
  std::vector<int> enc(ring.stride());
  ring.encode(e, enc.data());
  return enc;
}

bool coprime(std::span<const int> a, std::span<const int> b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] && b[k]) return false;
  }
  return true;
}

class Engine {
 public:
  Engine(RingPtr ring, std::optional<Grading> trunc_grading, long trunc_degree)
      : ring_(std::move(ring)), n_(ring_->nvars()), grading_(std::move(trunc_grading)), bound_(trunc_degree) {}

  IdealBasis run(const std::vector<Polynomial>& input) {
    std::vector<Polynomial> gens;
    for (const auto& g : input) {
      if (g.is_zero()) continue;
      if (grading_ && degree_of(g.leading_exponents()) > bound_) continue;
      gens.push_back(g.monic());
    }
    std::sort(gens.begin(), gens.end(), [&](const Polynomial& a, const Polynomial& b) {
      return compare_encoded(a.encoded(0).data(), b.encoded(0).data(), n_) < 0;
    });
    for (auto& g : gens) {
      Polynomial h = reduce_by_active(g);
      if (!h.is_zero()) insert(std::move(h));
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        if (less(pairs_[k], pairs_[best])) best = k;
      }
      Pair p = std::move(pairs_[best]);
      pairs_[best] = std::move(pairs_.back());
      pairs_.pop_back();
      if (grading_ && p.degree > bound_) continue;
      Polynomial s = spoly(p);
      Polynomial h = reduce_by_active(s);
      if (!h.is_zero()) insert(std::move(h));
    }
    return finish();
  }

 private:
  long degree_of(std::span<const int> e) const {
    if (!grading_) return 0;
    long d = 0;
    const auto& w = grading_->row(0);
    for (std::size_t k = 0; k < e.size(); ++k) d += w[k] * e[k];
    return d;
  }

  bool less(const Pair& a, const Pair& b) const {
    if (a.degree != b.degree) return a.degree < b.degree;
    int c = compare_encoded(a.lcm.data(), b.lcm.data(), n_);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  }

  Polynomial spoly(const Pair& p) const {
    const Polynomial& a = basis_[p.i];
    const Polynomial& b = basis_[p.j];
    const std::size_t s = ring_->stride();
    std::vector<int> ta(s), tb(s);
    auto la = a.encoded(0), lb = b.encoded(0);
    for (std::size_t k = 0; k < s; ++k) {
      ta[k] = p.lcm[k] - la[k];
      tb[k] = p.lcm[k] - lb[k];
    }
    Geobucket gb(ring_);
    const FieldElement one = FieldElement::one(ring_->field());
    gb.add(one, ta, a, 1);
    gb.add(-one, tb, b, 1);
    return gb.value();
  }

  Polynomial reduce_by_active(const Polynomial& f) const {
    Reducer r(ring_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (active_[k]) r.add(basis_[k]);
    }
    return r.reduce(f);
  }

  void insert(Polynomial h) {
    h.make_monic();
    const std::size_t hi = basis_.size();
    basis_.push_back(std::move(h));
    active_.push_back(true);
    const Polynomial& hp = basis_[hi];
    auto lh = hp.leading_exponents();

    // Gebauer-Moeller update.
    std::vector<Pair> c;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active_[g]) continue;
      Pair p{g, hi, encoded_lcm(*ring_, basis_[g], hp), 0};
      p.degree = degree_of(std::span<const int>(p.lcm).subspan(n_, n_));
      c.push_back(std::move(p));
    }
    auto lcm_exps = [&](const Pair& p) { return std::span<const int>(p.lcm).subspan(n_, n_); };
    auto is_coprime = [&](const Pair& p) { return coprime(basis_[p.i].leading_exponents(), lh); };
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = is_coprime(p);
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q) {
          if (divides(lcm_exps(c[q]), lcm_exps(p))) keep = false;
        }
        for (std::size_t q = 0; q < d.size() && keep; ++q) {
          if (divides(lcm_exps(d[q]), lcm_exps(p))) keep = false;
        }
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> e;
    for (auto& p : d) {
      if (!is_coprime(p)) e.push_back(std::move(p));
    }
    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      auto l = lcm_exps(p);
      if (divides(lh, l)) {
        auto l1 = encoded_lcm(*ring_, basis_[p.i], hp);
        auto l2 = encoded_lcm(*ring_, basis_[p.j], hp);
        if (l1 != p.lcm && l2 != p.lcm) continue;
      }
      kept.push_back(std::move(p));
    }
    for (auto& p : e) kept.push_back(std::move(p));
    pairs_ = std::move(kept);
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && divides(lh, basis_[g].leading_exponents())) active_[g] = false;
    }
  }

  IdealBasis finish() {
    std::vector<Polynomial> minimal;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (active_[k]) minimal.push_back(basis_[k]);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
      return compare_encoded(a.encoded(0).data(), b.encoded(0).data(), n_) < 0;
    });
    IdealBasis out{ring_, {}, true};
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      Reducer r(ring_);
      for (std::size_t q = 0; q < minimal.size(); ++q) {
        if (q != k) r.add(minimal[q]);
      }
      out.generators.push_back(r.reduce(minimal[k]));
    }
    return out;
  }

  RingPtr ring_;
  std::size_t n_;
  std::optional<Grading> grading_;
  long bound_;
  std::vector<Polynomial> basis_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

RingPtr common_ring(const std::vector<Polynomial>& gens) {
  for (const auto& g : gens) {
    if (g.ring()) return g.ring();
  }
  throw InvalidArgument("cannot infer ring from an empty generator list");
}

}  // namespace

IdealBasis buchberger(const std::vector<Polynomial>& gens) {
  RingPtr ring = common_ring(gens);
  return Engine(ring, std::nullopt, 0).run(gens);
}

IdealBasis buchberger(const std::vector<Polynomial>& gens, const TermOrdering& ord) {
  RingPtr src = common_ring(gens);
  if (src->ordering() == ord) return buchberger(gens);
  auto ring = std::make_shared<const Ring>(src->field(), src->names(), ord, src->grading());
  std::vector<Polynomial> moved;
  for (const auto& g : gens) moved.push_back(g.reorder(ring));
  return Engine(ring, std::nullopt, 0).run(moved);
}

Polynomial normal_form(const Polynomial& f, const IdealBasis& basis) {
  Polynomial g = f;
  if (g.ring() && !g.ring()->same_as(*basis.ring)) g = g.reorder(basis.ring);
  Reducer r(basis.ring);
  for (const auto& b : basis.generators) r.add(b);
  return r.reduce(g);
}

Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors) {
  if (f.is_zero()) return f;
  Reducer r(f.ring());
  for (const auto& d : divisors) r.add(d);
  return r.reduce(f);
}

TermOrdering make_elimination_ordering(std::size_t nvars, const std::vector<std::size_t>& eliminate,
                                       std::optional<TermOrdering> kept) {
  std::vector<bool> is_elim(nvars, false);
  for (std::size_t v : eliminate) is_elim.at(v) = true;
  std::vector<std::size_t> elim, keep;
  for (std::size_t v = 0; v < nvars; ++v) (is_elim[v] ? elim : keep).push_back(v);
  IntMatrix m;
  if (!elim.empty()) {
    std::vector<long> r(nvars, 0);
    for (std::size_t v : elim) r[v] = 1;
    m.push_back(r);
    for (std::size_t k = elim.size(); k-- > 1;) {
      std::vector<long> row(nvars, 0);
      row[elim[k]] = -1;
      m.push_back(row);
    }
  }
  if (!keep.empty()) {
    TermOrdering ko = kept ? *kept : TermOrdering::degrevlex(keep.size());
    if (ko.nvars() != keep.size()) throw InvalidOrdering("kept-block ordering has wrong size");
    for (const auto& krow : ko.matrix()) {
      std::vector<long> row(nvars, 0);
      for (std::size_t k = 0; k < keep.size(); ++k) row[keep[k]] = krow[k];
      m.push_back(row);
    }
  }
  return TermOrdering::from_matrix(std::move(m));
}

bool is_elimination_ordering(const TermOrdering& ord, const std::vector<std::size_t>& keep) {
  const std::size_t n = ord.nvars();
  std::vector<bool> kept(n, false);
  for (std::size_t v : keep) kept.at(v) = true;
  std::vector<std::size_t> elim;
  for (std::size_t v = 0; v < n; ++v) {
    if (!kept[v]) elim.push_back(v);
  }
  if (elim.empty()) return true;
  const auto& m = ord.matrix();
  IntMatrix block;
  for (std::size_t i = 0; i < elim.size(); ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      if (kept[v] && m[i][v] != 0) return false;
    }
    std::vector<long> row;
    for (std::size_t v : elim) row.push_back(m[i][v]);
    block.push_back(row);
  }
  if (matrix_rank(block) != elim.size()) return false;
  for (std::size_t c = 0; c < elim.size(); ++c) {
    for (std::size_t r = 0; r < elim.size(); ++r) {
      if (block[r][c] != 0) {
        if (block[r][c] < 0) return false;
        break;
      }
    }
  }
  return true;
}

std::vector<Polynomial> elimination_ideal(const IdealBasis& basis, const std::vector<std::size_t>& keep) {
  if (!is_elimination_ordering(basis.ring->ordering(), keep)) {
    throw OrderingNotEliminating("basis ordering does not eliminate the complement of the kept variables");
  }
  std::vector<bool> kept(basis.ring->nvars(), false);
  for (std::size_t v : keep) kept.at(v) = true;
  std::vector<Polynomial> out;
  for (const auto& g : basis.generators) {
    bool ok = true;
    for (std::size_t i = 0; i < g.num_terms() && ok; ++i) {
      auto e = g.exponents(i);
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] && !kept[v]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.push_back(g);
  }
  return out;
}

IdealBasis truncated_buchberger(const std::vector<Polynomial>& gens, const Grading& w, long d) {
  RingPtr ring = common_ring(gens);
  const Grading w1 = w.first_row();
  for (const auto& g : gens) {
    if (!is_homogeneous(g, w)) throw NotHomogeneous("generator " + g.to_string() + " is not W-homogeneous");
  }
  return Engine(ring, w1, d).run(gens);
}

}  // namespace sagbisat
