#include "sagbisat/subalgebra.hpp"

#include <algorithm>
#include <numeric>

#include "sagbisat/error.hpp"
#include "sagbisat/toric.hpp"

namespace sagbisat {

namespace {

std::vector<long> degree_or_empty(const Polynomial& p, const std::optional<Grading>& w) {
  if (!w || p.is_zero()) return {};
  return w->degree(p.leading_exponents());
}

// K[x1..xr, original variables] with the original block eliminated.
RingPtr elimination_ring(const Ring& base, std::size_t r) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= r; ++i) names.push_back("x" + std::to_string(i));
  for (const auto& n : base.names()) names.push_back(n);
  std::vector<std::size_t> elim(base.nvars());
  std::iota(elim.begin(), elim.end(), r);
  return std::make_shared<const Ring>(base.field(), names, make_elimination_ordering(r + base.nvars(), elim));
}

std::vector<std::size_t> shift_map(std::size_t n, std::size_t offset) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), offset);
  return m;
}

// x_i - g_i in the elimination ring.
std::vector<Polynomial> graph_ideal(const std::vector<Polynomial>& gens, const RingPtr& big) {
  const std::size_t r = gens.size();
  auto into = shift_map(gens.empty() ? 0 : gens[0].nvars(), r);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(Polynomial::variable(big, i) - gens[i].map_variables(big, into));
  return out;
}

// Restriction of a polynomial supported on x1..xr to relation_ring(r).
Polynomial to_xring(const Polynomial& p, const RingPtr& xring) {
  std::vector<std::size_t> m(p.nvars(), 0);
  std::iota(m.begin(), m.begin() + xring->nvars(), 0);
  return p.map_variables(xring, m);
}

bool supported_on_prefix(const Polynomial& p, std::size_t r) {
  for (std::size_t i = 0; i < p.num_terms(); ++i) {
    auto e = p.exponents(i);
    for (std::size_t k = r; k < e.size(); ++k) {
      if (e[k]) return false;
    }
  }
  return true;
}

void require_member(const Polynomial& g, const SubalgebraPresentation& s) {
  if (g.is_zero()) throw GNotInS("the saturating element is zero");
  if (g.is_constant()) return;
  if (member(g, s).verdict != Verdict::In) throw GNotInS(g.to_string() + " is not in the subalgebra");
}

}  // namespace

// -------------------------------------------------------------- presentation

void sort_generators(std::vector<Polynomial>& gens, const std::optional<Grading>& w) {
  std::stable_sort(gens.begin(), gens.end(), [&](const Polynomial& a, const Polynomial& b) {
    auto da = degree_or_empty(a, w), db = degree_or_empty(b, w);
    if (da != db) return da < db;
    int c = compare_encoded(a.encoded(0).data(), b.encoded(0).data(), a.nvars());
    if (c != 0) return c < 0;
    return a.num_terms() < b.num_terms();
  });
}

SubalgebraPresentation SubalgebraPresentation::make(const std::vector<Polynomial>& gens, std::optional<Grading> w) {
  SubalgebraPresentation s;
  s.grading = std::move(w);
  for (const auto& g : gens) {
    if (!s.ring) s.ring = g.ring();
    if (!g.ring()->same_as(*s.ring)) throw RingMismatch("generators from different rings");
    if (g.is_zero() || g.is_constant()) continue;
    if (s.grading && !is_homogeneous(g, *s.grading))
      throw NotHomogeneous("generator " + g.to_string() + " is not W-homogeneous");
    Polynomial m = g.monic();
    if (std::find(s.generators.begin(), s.generators.end(), m) == s.generators.end()) s.generators.push_back(m);
  }
  sort_generators(s.generators, s.grading);
  return s;
}

RingPtr relation_ring(const Field& field, std::size_t r) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= r; ++i) names.push_back("x" + std::to_string(i));
  return std::make_shared<const Ring>(field, names, TermOrdering::degrevlex(r));
}

// ---------------------------------------------------------------- membership

MembershipOracle::MembershipOracle(const SubalgebraPresentation& s, std::optional<long> degree_bound)
    : s_(s), bound_(degree_bound) {
  if (!s_.ring) throw InvalidArgument("membership needs a ring");
  const std::size_t r = s_.generators.size();
  xring_ = relation_ring(s_.ring->field(), r);
  big_ = elimination_ring(*s_.ring, r);
  auto gens = graph_ideal(s_.generators, big_);
  if (gens.empty()) {
    basis_ = IdealBasis{big_, {}, true};
    return;
  }
  if (bound_) {
    if (!s_.grading) throw NotGraded("a degree bound needs a graded presentation");
    IntMatrix rows(s_.grading->num_rows(), std::vector<long>(r + s_.ring->nvars()));
    for (std::size_t i = 0; i < r; ++i) {
      auto d = s_.grading->degree(s_.generators[i].leading_exponents());
      for (std::size_t k = 0; k < d.size(); ++k) rows[k][i] = d[k];
    }
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (std::size_t j = 0; j < s_.ring->nvars(); ++j) rows[k][r + j] = s_.grading->row(k)[j];
    basis_ = truncated_buchberger(gens, Grading(rows), *bound_);
  } else {
    basis_ = buchberger(gens);
  }
}

MembershipCertificate MembershipOracle::test(const Polynomial& f) const {
  if (!f.ring()->same_as(*s_.ring)) throw RingMismatch("query from a different ring");
  const std::size_t r = s_.generators.size();
  if (bound_) {
    auto d = homogeneous_degree(f, *s_.grading);
    if (!d) throw NotHomogeneous("truncated membership needs a homogeneous query");
    if (!d->empty() && (*d)[0] > *bound_) throw InvalidArgument("query degree exceeds the oracle's bound");
  }
  Polynomial lifted = f.map_variables(big_, shift_map(f.nvars(), r));
  Polynomial nf = basis_.generators.empty() ? lifted : normal_form(lifted, basis_);
  if (!supported_on_prefix(nf, r)) return {Verdict::Out, std::nullopt};
  return {Verdict::In, to_xring(nf, xring_)};
}

MembershipCertificate member(const Polynomial& f, const SubalgebraPresentation& s) {
  if (f.is_constant() || f.is_zero()) {
    auto x = relation_ring(f.field(), s.generators.size());
    return {Verdict::In, Polynomial::constant(x, f.is_zero() ? FieldElement::zero(f.field()) : f.coeff(0))};
  }
  // Homogeneous input allows a basis truncated at the degree of f; without a
  // grading, standard degree is tried.
  std::optional<Grading> w = s.grading;
  if (!w || !w->first_row().is_positive()) w = Grading::standard(f.nvars());
  auto d = homogeneous_degree(f, *w);
  bool graded = d.has_value();
  for (const auto& g : s.generators) graded = graded && is_homogeneous(g, *w);
  if (!graded) return MembershipOracle(s).test(f);
  SubalgebraPresentation t = s;
  t.grading = w;
  return MembershipOracle(t, (*d)[0]).test(f);
}

std::vector<Polynomial> rel_mod_g(const SubalgebraPresentation& s, const Polynomial& g) {
  if (g.is_zero()) throw ZeroPolynomial("rel_mod_g needs g != 0");
  const std::size_t r = s.generators.size();
  auto xring = relation_ring(s.ring->field(), r);
  if (g.is_constant()) return {};
  RingPtr big = elimination_ring(*s.ring, r);
  auto gens = graph_ideal(s.generators, big);
  gens.push_back(g.map_variables(big, shift_map(g.nvars(), r)));
  IdealBasis basis = buchberger(gens);
  std::vector<Polynomial> out;
  for (const auto& b : basis.generators) {
    if (supported_on_prefix(b, r)) out.push_back(to_xring(b, xring));
  }
  return out;
}

// ---------------------------------------------------------------- reduction

std::size_t SubalgebraReducer::VecHash::operator()(const std::vector<int>& v) const {
  std::size_t h = 1469598103934665603ULL;
  for (int x : v) h = (h ^ static_cast<unsigned>(x)) * 1099511628211ULL;
  return h;
}

SubalgebraReducer::SubalgebraReducer(std::vector<Polynomial> gens) : gens_(std::move(gens)) {
  for (auto& g : gens_) {
    if (g.is_zero()) throw ZeroPolynomial("reducer generators must be nonzero");
    g.make_monic();
    lts_.push_back(g.leading_term());
  }
  powers_.resize(gens_.size());
}

std::optional<std::vector<int>> SubalgebraReducer::represent(std::span<const int> t) {
  std::vector<int> key(t.begin(), t.end());
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto alpha = MonomialRepresenter(lts_).represent(t);
  cache_.emplace(std::move(key), alpha);
  return alpha;
}

Polynomial SubalgebraReducer::product(const std::vector<int>& alpha) {
  RingPtr ring = gens_.at(0).ring();
  Polynomial p = Polynomial::constant(ring, 1);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!alpha[i]) continue;
    auto& pw = powers_[i];
    if (pw.empty()) pw.push_back(gens_[i]);
    while (static_cast<int>(pw.size()) < alpha[i]) pw.push_back(pw.back() * gens_[i]);
    p = p * pw[alpha[i] - 1];
  }
  return p;
}

std::optional<Polynomial> SubalgebraReducer::step(const Polynomial& h) {
  if (h.is_zero() || gens_.empty()) return std::nullopt;
  auto alpha = represent(h.leading_exponents());
  if (!alpha) return std::nullopt;
  Polynomial out = h;
  out.add_scaled(-h.leading_coeff(), Term::one(h.nvars()), product(*alpha));
  return out;
}

Polynomial SubalgebraReducer::remainder(const Polynomial& h) {
  if (h.is_zero() || gens_.empty()) return h;
  RingPtr ring = h.ring();
  Geobucket bucket(h);
  std::vector<int> enc;
  FieldElement c = FieldElement::zero(ring->field());
  std::vector<int> mons;
  std::vector<FieldElement> coeffs;
  const std::vector<int> one(ring->stride(), 0);
  const std::size_t n = ring->nvars();
  while (bucket.pop_leading(enc, c)) {
    auto alpha = represent(std::span<const int>(enc).subspan(n, n));
    if (alpha) {
      bucket.add(-c, one, product(*alpha), 1);
    } else {
      mons.insert(mons.end(), enc.begin(), enc.end());
      coeffs.push_back(c);
    }
  }
  return Polynomial::from_raw(ring, std::move(mons), std::move(coeffs));
}

std::optional<Polynomial> slt_reduction_step(const Polynomial& h, const std::vector<Polynomial>& gens) {
  if (h.is_zero()) throw ZeroPolynomial("reduction step needs h != 0");
  return SubalgebraReducer(gens).step(h);
}

Polynomial s_remainder(const Polynomial& h, const std::vector<Polynomial>& gens) {
  return SubalgebraReducer(gens).remainder(h);
}

SubalgebraPresentation sat_interreduce(const SubalgebraPresentation& s, const Polynomial& g) {
  require_member(g, s);
  SubalgebraPresentation out = s;
  const Polynomial pinned = g.monic();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.generators.size() && !changed; ++i) {
      const Polynomial& gi = out.generators[i];
      if (gi == pinned) continue;
      std::vector<Polynomial> others;
      for (std::size_t k = 0; k < out.generators.size(); ++k) {
        if (k != i) others.push_back(out.generators[k]);
      }
      Polynomial r = s_remainder(gi, others);
      if (r.is_zero() || r.is_constant()) {
        out.generators.erase(out.generators.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
      if (!g.is_constant()) r = saturate_poly(r, g).value;
      r.make_monic();
      if (r.is_constant()) {
        out.generators.erase(out.generators.begin() + static_cast<long>(i));
        changed = true;
      } else if (!(r == gi)) {
        out.generators[i] = r;
        changed = true;
      }
    }
    if (changed) {
      auto rebuilt = SubalgebraPresentation::make(out.generators, out.grading);
      out.generators = std::move(rebuilt.generators);
    }
  }
  return out;
}

// ---------------------------------------------------------------- E_g

Enlargement enlarge(const SubalgebraPresentation& s, const Polynomial& g) {
  require_member(g, s);
  Enlargement out{s, {}, {}};
  if (g.is_constant()) return out;
  auto rels = rel_mod_g(s, g);
  std::optional<MembershipOracle> oracle;
  for (const auto& rel : rels) {
    Polynomial e = rel.substitute(s.ring, s.generators);
    auto sat = saturate_poly(e, g);
    Polynomial h = sat.value;
    if (h.is_zero() || h.is_constant()) continue;
    h.make_monic();
    if (std::find(out.added.begin(), out.added.end(), h) != out.added.end()) continue;
    if (!oracle) oracle.emplace(s);
    if (oracle->test(h).verdict == Verdict::In) continue;
    out.added.push_back(h);
    out.exponents.push_back(sat.exponent);
  }
  std::vector<Polynomial> all = s.generators;
  all.insert(all.end(), out.added.begin(), out.added.end());
  out.algebra = SubalgebraPresentation::make(all, s.grading);
  return out;
}

SubalgebraPresentation enlarge_E(const SubalgebraPresentation& s, const Polynomial& g) { return enlarge(s, g).algebra; }

}  // namespace sagbisat
