#include "sagbisat/saturate.hpp"

#include <algorithm>
#include <map>

#include "sagbisat/error.hpp"
#include "sagbisat/toric.hpp"

namespace sagbisat {

namespace {

void check_cancel(const SaturationOptions& opts) {
  if (opts.cancel && opts.cancel->load()) throw Cancelled("computation cancelled");
}

void report(const SaturationOptions& opts, long degree, const std::vector<Polynomial>& gens) {
  if (!opts.on_progress) return;
  Progress p{degree, gens.size(), 0};
  for (const auto& g : gens) p.max_terms = std::max(p.max_terms, g.num_terms());
  opts.on_progress(p);
}

long max_first_degree(const std::vector<Polynomial>& gens, const std::optional<Grading>& w) {
  long d = 0;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    d = std::max(d, w ? w->degree(g.leading_exponents())[0] : g.leading_term().total_degree());
  }
  return d;
}

bool is_a0(const Polynomial& p) { return p.num_terms() == 1 && p.leading_term() == Term::variable(p.nvars(), 0); }

// p / a0^k for the largest such k.
Polynomial strip_a0(const Polynomial& p) {
  if (p.is_zero()) return p;
  int k = p.exponents(0)[0];
  for (std::size_t i = 1; i < p.num_terms() && k > 0; ++i) k = std::min(k, p.exponents(i)[0]);
  if (k == 0) return p;
  std::vector<int> e(p.nvars(), 0);
  e[0] = k;
  return p.divide_by_term(Term(e));
}

const Grading& grading_of(const SubalgebraPresentation& s) {
  if (s.grading) return *s.grading;
  if (s.ring && s.ring->grading()) return *s.ring->grading();
  throw NotGraded("the presentation carries no grading");
}

void require_homogeneous(const std::vector<Polynomial>& gens, const Grading& w) {
  for (const auto& g : gens) {
    if (!is_homogeneous(g, w)) throw NotGraded(g.to_string() + " is not homogeneous");
  }
}

Polynomial lt_remainder(SubalgebraReducer& red, Polynomial h) {
  while (!h.is_zero()) {
    auto next = red.step(h);
    if (!next) break;
    h = std::move(*next);
  }
  return h;
}

// Each element other than a0 is S_LT-reduced by the rest, stripped of a0 and
// made monic, until a full pass changes nothing. For homogeneous input under
// an a0-DegRev ordering, a0 divides f as soon as it divides LT(f).
std::vector<Polynomial> sat_interreduce_a0(std::vector<Polynomial> gens, const Grading& w) {
  bool changed = true;
  while (changed) {
    changed = false;
    sort_generators(gens, w);
    for (std::size_t i = 0; i < gens.size();) {
      if (is_a0(gens[i])) {
        ++i;
        continue;
      }
      std::vector<Polynomial> others;
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (k != i) others.push_back(gens[k]);
      }
      Polynomial r = gens[i];
      if (!others.empty()) {
        SubalgebraReducer red(others);
        r = lt_remainder(red, std::move(r));
      }
      r = strip_a0(r);
      if (r.is_zero() || r.is_constant()) {
        gens.erase(gens.begin() + static_cast<long>(i));
        changed = true;
        continue;
      }
      r.make_monic();
      if (!(r == gens[i])) {
        gens[i] = std::move(r);
        changed = true;
      }
      ++i;
    }
  }
  return gens;
}

struct SagbiSetup {
  Grading w;
  bool truncated = false;
  long bound = 0;
};

SaturationResult run_sat_sagbi(const SubalgebraPresentation& s, const SagbiSetup& setup, const SaturationOptions& opts) {
  const Grading& w = setup.w;
  if (!s.ring) throw InvalidArgument("empty presentation");
  require_homogeneous(s.generators, w);
  if (!w.is_positive()) throw NotGraded("the grading is not positive");
  if (!s.ordering().is_a0_degrev_type(w)) throw OrderingNotDegRevType("the ordering is not of a0-DegRev type");

  const RingPtr& ring = s.ring;
  const Polynomial a0 = Polynomial::variable(ring, 0);
  std::vector<Polynomial> gens;
  bool has_a0 = false;
  for (const auto& g : s.generators) {
    if (g.is_zero() || g.is_constant()) continue;
    gens.push_back(g.monic());
    has_a0 = has_a0 || is_a0(gens.back());
  }
  if (!has_a0) gens.push_back(a0);

  SaturationResult result;
  result.sagbi = false;
  if (setup.truncated) result.truncation_degree = setup.bound;
  for (unsigned iter = 1; iter <= opts.max_iterations; ++iter) {
    check_cancel(opts);
    gens = sat_interreduce_a0(std::move(gens), w);
    result.iterations = iter;

    // a0 divides no other leading term, so it takes no part in relations.
    std::vector<Polynomial> rest;
    for (const auto& g : gens) {
      if (!is_a0(g)) rest.push_back(g);
    }
    std::vector<Term> lts;
    for (const auto& g : rest) lts.push_back(g.leading_term());
    std::vector<Binomial> rels;
    Grading induced;
    if (!lts.empty()) {
      BinomialIdeal ideal = setup.truncated ? toric_generators_up_to(lts, w, setup.bound) : toric_ideal(lts, w);
      rels = std::move(ideal.binomials);
      induced = ideal.induced;
    }
    std::map<std::vector<long>, std::vector<const Binomial*>> batches;
    for (const auto& b : rels) batches[induced.degree(std::span<const int>(b.lead))].push_back(&b);

    SubalgebraReducer reducer(gens);
    std::vector<std::size_t> slot(rest.size());
    for (std::size_t i = 0, k = 0; i < gens.size(); ++i) {
      if (!is_a0(gens[i])) slot[k++] = i;
    }
    auto lift = [&](const std::vector<int>& e) {
      std::vector<int> alpha(gens.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) alpha[slot[i]] = e[i];
      return alpha;
    };

    std::vector<Polynomial> fresh;
    for (const auto& [deg, batch] : batches) {
      check_cancel(opts);
      report(opts, deg.empty() ? 0 : deg[0], gens);
      for (const Binomial* b : batch) {
        Polynomial e = reducer.product(lift(b->lead)) - reducer.product(lift(b->trail));
        Polynomial h = strip_a0(reducer.remainder(e));
        if (h.is_zero() || h.is_constant()) continue;
        h.make_monic();
        if (std::find(fresh.begin(), fresh.end(), h) == fresh.end()) fresh.push_back(std::move(h));
      }
      if (!fresh.empty()) break;
    }
    if (fresh.empty()) {
      result.status = SaturationStatus::Stabilized;
      result.sagbi = true;
      sort_generators(gens, w);
      result.algebra = SubalgebraPresentation{ring, std::move(gens), w};
      return result;
    }
    gens.insert(gens.end(), fresh.begin(), fresh.end());
  }
  gens = sat_interreduce_a0(std::move(gens), w);
  result.status = SaturationStatus::IterationLimit;
  result.algebra = SubalgebraPresentation{ring, std::move(gens), w};
  return result;
}

}  // namespace

SaturationResult subalgebra_saturation(const SubalgebraPresentation& s, const Polynomial& g,
                                       const SaturationOptions& opts) {
  if (g.is_zero()) throw GNotInS("the saturating element is zero");
  if (!g.is_constant() && member(g, s).verdict != Verdict::In)
    throw GNotInS(g.to_string() + " is not in the subalgebra");
  SaturationResult result;
  result.algebra = s;
  for (unsigned iter = 1; iter <= opts.max_iterations; ++iter) {
    check_cancel(opts);
    result.iterations = iter;
    Enlargement e = enlarge(result.algebra, g);
    report(opts, max_first_degree(e.algebra.generators, e.algebra.grading), e.algebra.generators);
    if (e.added.empty()) {
      result.status = SaturationStatus::Stabilized;
      return result;
    }
    result.algebra = std::move(e.algebra);
  }
  result.status = SaturationStatus::IterationLimit;
  return result;
}

SaturationResult sat_sagbi(const SubalgebraPresentation& s, const SaturationOptions& opts) {
  return run_sat_sagbi(s, SagbiSetup{grading_of(s), false, 0}, opts);
}

SaturationResult trunc_sat_sagbi(const SubalgebraPresentation& s, long d, const SaturationOptions& opts) {
  const Grading& w = grading_of(s);
  if (w.num_rows() < 2) throw BadGradingShape("the grading needs at least two rows");
  const auto& w1 = w.row(0);
  const auto& w2 = w.row(1);
  if (w1[0] != 0 || w2[0] != 1) throw BadGradingShape("a0 must have degree 0 in row 1 and degree 1 in row 2");
  for (std::size_t i = 1; i < w1.size(); ++i) {
    if (w1[i] <= 0) throw BadGradingShape("row 1 must be positive outside a0");
  }
  return run_sat_sagbi(s, SagbiSetup{w, true, d}, opts);
}

std::vector<long> positive_row(const Grading& w) {
  const std::size_t m = w.num_rows();
  if (m == 0) throw NotGraded("empty grading");
  for (long c = 1; c <= 64; ++c) {
    std::vector<long> row(w.nvars(), 0);
    long scale = 1;
    for (std::size_t k = m; k-- > 0;) {
      for (std::size_t v = 0; v < row.size(); ++v) row[v] += scale * w.row(k)[v];
      scale *= c;
    }
    if (std::all_of(row.begin(), row.end(), [](long x) { return x > 0; })) return row;
  }
  throw NotGraded("no positive combination of the grading rows");
}

std::vector<Polynomial> min_gens(const SubalgebraPresentation& s) {
  if (!s.ring) return {};
  const Grading row = Grading::row(positive_row(grading_of(s)));
  require_homogeneous(s.generators, row);
  std::vector<Polynomial> gens;
  for (const auto& g : s.generators) {
    if (!g.is_zero() && !g.is_constant()) gens.push_back(g.monic());
  }
  if (gens.empty()) return {};
  sort_generators(gens, row);
  auto deg = [&](const Polynomial& p) { return row.degree(p.leading_exponents())[0]; };
  const long lo = deg(gens.front()), hi = deg(gens.back());

  std::vector<Polynomial> sb, out;
  auto reduce = [&](const Polynomial& p) { return sb.empty() ? p : SubalgebraReducer(sb).remainder(p); };
  std::size_t next = 0;
  for (long d = lo; d <= hi; ++d) {
    for (; next < gens.size() && deg(gens[next]) == d; ++next) {
      Polynomial h = reduce(gens[next]);
      if (h.is_zero()) continue;
      h.make_monic();
      sb.push_back(h);
      out.push_back(std::move(h));
    }
    if (d == hi) break;
    std::vector<Term> lts;
    for (const auto& g : sb) lts.push_back(g.leading_term());
    BinomialIdeal ideal = toric_generators_up_to(lts, row, d + 1);
    SubalgebraReducer products(sb);
    std::vector<Polynomial> evaluated;
    for (const auto& b : ideal.binomials) {
      if (ideal.induced.degree(std::span<const int>(b.lead))[0] != d + 1) continue;
      evaluated.push_back(products.product(b.lead) - products.product(b.trail));
    }
    for (const auto& e : evaluated) {
      Polynomial h = reduce(e);
      if (h.is_zero()) continue;
      h.make_monic();
      sb.push_back(std::move(h));
    }
  }
  return out;
}

SaturationResult weak_saturate_with_witness(const SubalgebraPresentation& s, const Polynomial& g,
                                            const Polynomial& f, const SaturationOptions& opts) {
  if (f.nvars() != 1) throw InvalidArgument("f must be univariate");
  if (f.is_zero() || f.is_constant()) throw WitnessNotInS("f must be non-constant");
  const Polynomial fg = f.substitute(g.ring(), std::vector<Polynomial>{g});
  if (member(fg, s).verdict != Verdict::In) throw WitnessNotInS("f(g) is not in the subalgebra");
  std::vector<Polynomial> gens = s.generators;
  gens.push_back(g);
  return subalgebra_saturation(SubalgebraPresentation::make(gens, s.grading), g, opts);
}

}  // namespace sagbisat
