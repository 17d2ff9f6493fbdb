#include "sagbisat/uinv.hpp"

#include <numeric>

#include "sagbisat/error.hpp"

namespace sagbisat {

Grading uinv_grading(int n) {
  if (n < 1) throw InvalidArgument("n must be positive");
  std::vector<long> w1(n + 1), w2(n + 1, 1);
  std::iota(w1.begin(), w1.end(), 0L);
  return Grading(IntMatrix{w1, w2});
}

RingPtr uinv_ring(const Field& field, int n) {
  if (!field.is_rational() && field.characteristic() <= static_cast<std::uint64_t>(n))
    throw DividedPowerUndefined("the characteristic must exceed n");
  Grading w = uinv_grading(n);
  return Ring::make(field, n + 1, make_a0_degrev(w), w);
}

Polynomial c_polynomial(const RingPtr& ring, int k) {
  if (k < 2) throw InvalidArgument("c_k needs k >= 2");
  if (ring->nvars() < static_cast<std::size_t>(k) + 1) throw InvalidArgument("c_k needs variables a0..ak");
  const Field& f = ring->field();
  const std::size_t nv = ring->nvars();
  std::vector<std::pair<Term, FieldElement>> terms;
  auto sign = [&](int e) { return FieldElement(f, e % 2 == 0 ? 1L : -1L); };

  std::vector<int> e(nv, 0);
  e[1] = k;
  terms.emplace_back(Term(e), sign(k - 1) * FieldElement(f, static_cast<long>(k - 1)) * inv_factorial(k, f));
  for (int j = 2; j <= k; ++j) {
    std::vector<int> t(nv, 0);
    t[0] = j - 1;
    t[1] += k - j;
    t[j] += 1;
    terms.emplace_back(Term(t), sign(k - 1 + j - 1) * inv_factorial(k - j, f));
  }
  return Polynomial::from_terms(ring, terms);
}

namespace {

RingPtr with_shift_variable(const RingPtr& ring) {
  auto names = ring->names();
  std::string t = "t";
  while (ring->index_of(t)) t += "_";
  names.push_back(t);
  return std::make_shared<const Ring>(ring->field(), names, TermOrdering::degrevlex(names.size()));
}

}  // namespace

Polynomial translate(const Polynomial& h) {
  const RingPtr big = with_shift_variable(h.ring());
  const std::size_t nv = h.nvars();
  const Field& f = big->field();
  const Polynomial t = Polynomial::variable(big, nv);
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < nv; ++i) {
    Polynomial img(big);
    for (std::size_t j = 0; j <= i; ++j) {
      img += Polynomial::variable(big, j) * t.pow(static_cast<unsigned>(i - j)) * inv_factorial(i - j, f);
    }
    images.push_back(std::move(img));
  }
  return h.substitute(big, images);
}

bool is_translation_invariant(const Polynomial& h) {
  Polynomial moved = translate(h);
  std::vector<std::size_t> same(h.nvars());
  std::iota(same.begin(), same.end(), 0);
  return moved == h.map_variables(moved.ring(), same);
}

UinvResult compute_Sn(const UinvProblem& prob, const SaturationOptions& opts) {
  if (prob.n < 2) throw InvalidArgument("n must be at least 2");
  RingPtr ring = uinv_ring(prob.field, prob.n);
  const Grading& w = *ring->grading();
  std::vector<Polynomial> gens{Polynomial::variable(ring, 0)};
  for (int k = 2; k <= prob.n; ++k) gens.push_back(c_polynomial(ring, k));

  UinvResult out;
  out.sagbi = trunc_sat_sagbi(SubalgebraPresentation{ring, gens, w}, prob.degree, opts);
  out.minimal = min_gens(out.sagbi.algebra);
  for (const auto& g : out.minimal) {
    out.leading_terms.push_back(g.leading_term());
    out.bidegrees.push_back(w.degree(g.leading_exponents()));
    out.support_sizes.push_back(g.num_terms());
  }
  return out;
}

}  // namespace sagbisat
