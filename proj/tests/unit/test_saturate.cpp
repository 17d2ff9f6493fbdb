#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "helpers.hpp"
#include "sagbisat/error.hpp"
#include "sagbisat/saturate.hpp"
#include "sagbisat/toric.hpp"

using namespace sagbisat;
using namespace sagbisat::testing;

namespace {

constexpr int kIterations = 100;

RingPtr graded_ring(const Grading& w) {
  return Ring::make(Field::rationals(), w.nvars(), make_a0_degrev(w), w);
}

SubalgebraPresentation pres(const RingPtr& r, const std::vector<std::string>& gens,
                            std::optional<Grading> w = std::nullopt) {
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(P(r, g));
  return SubalgebraPresentation::make(ps, std::move(w));
}

std::vector<Polynomial> sorted(std::vector<Polynomial> v) {
  std::sort(v.begin(), v.end(), [](const Polynomial& a, const Polynomial& b) { return a.to_string() < b.to_string(); });
  return v;
}

std::vector<Polynomial> polys(const RingPtr& r, const std::vector<std::string>& gens) {
  std::vector<Polynomial> out;
  for (const auto& g : gens) out.push_back(P(r, g).monic());
  return out;
}

bool same_algebra(const SubalgebraPresentation& a, const SubalgebraPresentation& b) {
  for (const auto& g : a.generators) {
    if (member(g, b).verdict != Verdict::In) return false;
  }
  for (const auto& g : b.generators) {
    if (member(g, a).verdict != Verdict::In) return false;
  }
  return true;
}

std::vector<long> degree_multiset(const std::vector<Polynomial>& gens, const std::vector<long>& row) {
  Grading w = Grading::row(row);
  std::vector<long> out;
  for (const auto& g : gens) out.push_back(w.degree(g.leading_exponents())[0]);
  std::sort(out.begin(), out.end());
  return out;
}

// Products of generators of row-degree d, row-echeloned. G is a SAGBI basis in
// that degree iff the rank equals the number of distinct leading-term products.
bool sagbi_in_degree(const std::vector<Polynomial>& gens, const std::vector<long>& row, long d) {
  Grading w = Grading::row(row);
  const RingPtr& r = gens.front().ring();
  const std::size_t n = r->nvars();
  std::vector<Polynomial> prods;
  std::set<std::vector<int>> lts;
  std::function<void(std::size_t, long, Polynomial, std::vector<int>)> rec = [&](std::size_t i, long left, Polynomial p,
                                                                                 std::vector<int> t) {
    if (left == 0) {
      prods.push_back(std::move(p));
      lts.insert(std::move(t));
      return;
    }
    if (i == gens.size()) return;
    const long dg = w.degree(gens[i].leading_exponents())[0];
    rec(i + 1, left, p, t);
    for (long k = 1; k * dg <= left; ++k) {
      p = p * gens[i];
      for (std::size_t v = 0; v < n; ++v) t[v] += gens[i].leading_exponents()[v];
      rec(i + 1, left - k * dg, p, t);
    }
  };
  rec(0, d, Polynomial::constant(r, 1), std::vector<int>(n, 0));
  std::map<std::vector<int>, Polynomial> echelon;
  for (auto p : prods) {
    while (!p.is_zero()) {
      auto lt = p.leading_term().exponents();
      auto it = echelon.find(lt);
      if (it == echelon.end()) {
        echelon.emplace(lt, p.monic());
        break;
      }
      p.add_scaled(-p.leading_coeff(), Term::one(n), it->second);
    }
  }
  return echelon.size() == lts.size();
}

const char* kG4Terminates = "a1^4*a2 - 2/3*a1^3*a3 - a0*a1^2*a2^2 + 1/3*a0*a3^2 + 1/3*a0^2*a2^3";

// ------------------------------------------------------- subalgebra_saturation

TEST(Saturation, TerminatesExample) {
  auto r = qq_ring(4);
  auto s = pres(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3"});
  auto res = subalgebra_saturation(s, P(r, "a0"));
  EXPECT_EQ(res.status, SaturationStatus::Stabilized);
  EXPECT_EQ(res.iterations, 2u);
  EXPECT_EQ(sorted(res.algebra.generators), sorted(polys(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3", kG4Terminates})));
}

TEST(Saturation, NonSatReduceHitsIterationLimit) {
  auto r = qq_ring(3);
  auto s = pres(r, {"a0", "a1 - a0*a1^2", "a2", "a1*a2"});
  SaturationOptions opts;
  opts.max_iterations = 5;
  auto res = subalgebra_saturation(s, P(r, "a0"), opts);
  EXPECT_EQ(res.status, SaturationStatus::IterationLimit);
  EXPECT_EQ(res.iterations, 5u);
  const auto& gens = res.algebra.generators;
  for (int k = 2; k <= 6; ++k) {
    auto t = P(r, "a1^" + std::to_string(k) + "*a2");
    EXPECT_NE(std::find(gens.begin(), gens.end(), t), gens.end()) << t;
  }
  EXPECT_EQ(gens.size(), 9u);
}

TEST(Saturation, NonSatReduceLadderIsCertified) {
  auto r = qq_ring(3);
  auto g = P(r, "a0");
  auto s = pres(r, {"a0", "a1 - a0*a1^2", "a2", "a1*a2"});
  for (int i = 0; i <= 4; ++i) {
    auto e = enlarge(s, g);
    ASSERT_EQ(e.added.size(), 1u);
    EXPECT_EQ(e.added[0], P(r, "a1^" + std::to_string(i + 2) + "*a2"));
    EXPECT_EQ(member(g * e.added[0], s).verdict, Verdict::In);
    s = e.algebra;
  }
}

TEST(Saturation, SaturatedInputIsFixed) {
  auto r = qq_ring(2);
  auto s = pres(r, {"a0", "a1"});
  auto res = subalgebra_saturation(s, P(r, "a0"));
  EXPECT_EQ(res.status, SaturationStatus::Stabilized);
  EXPECT_EQ(res.iterations, 1u);
  EXPECT_EQ(res.algebra.generators, s.generators);
}

TEST(Saturation, RejectsElementOutside) {
  auto r = qq_ring(2);
  EXPECT_THROW(subalgebra_saturation(pres(r, {"a0^2", "a1"}), P(r, "a0")), GNotInS);
}

TEST(Saturation, IdempotentAtFixpoint) {
  auto r = qq_ring(4);
  auto s = pres(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3"});
  auto once = subalgebra_saturation(s, P(r, "a0"));
  auto twice = subalgebra_saturation(once.algebra, P(r, "a0"));
  EXPECT_EQ(twice.status, SaturationStatus::Stabilized);
  EXPECT_EQ(twice.iterations, 1u);
  EXPECT_EQ(twice.algebra.generators, once.algebra.generators);
}

TEST(Saturation, IntermediateAlgebraHasSameSaturation) {
  auto r = qq_ring(4);
  auto g = P(r, "a0");
  auto s = pres(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3"});
  auto from_s = subalgebra_saturation(s, g);
  auto a = s;
  a.generators.push_back(from_s.algebra.generators.back() * P(r, "a1^2 - a0*a2"));
  auto from_a = subalgebra_saturation(a, g);
  EXPECT_TRUE(same_algebra(from_s.algebra, from_a.algebra));
}

TEST(Saturation, CancellationFlag) {
  auto r = qq_ring(3);
  std::atomic<bool> stop{true};
  SaturationOptions opts;
  opts.cancel = &stop;
  EXPECT_THROW(subalgebra_saturation(pres(r, {"a0", "a1"}), P(r, "a0"), opts), Cancelled);
}

TEST(Saturation, ProgressIsReported) {
  auto r = qq_ring(4);
  std::vector<Progress> seen;
  SaturationOptions opts;
  opts.on_progress = [&](const Progress& p) { seen.push_back(p); };
  subalgebra_saturation(pres(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3"}), P(r, "a0"), opts);
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen.back().basis_size, 4u);
  EXPECT_EQ(seen.back().max_terms, 5u);
}

// Colon sets need not be algebras: a1 in S:a0 but a1^2 is not.
TEST(Saturation, ColonSetIsNotAnAlgebra) {
  auto r = qq_ring(2);
  auto s = pres(r, {"a0*a1"});
  EXPECT_EQ(member(P(r, "a0*a1"), s).verdict, Verdict::In);
  EXPECT_EQ(member(P(r, "a0*a1^2"), s).verdict, Verdict::Out);
}

// ------------------------------------------------------------------ sat_sagbi

TEST(SatSagbi, EssentialSigmaExample) {
  auto w = Grading::standard(4);
  auto r = graded_ring(w);
  auto s = pres(r, {"a0", "a0*a2 - a1^2", "a0*a3^2 - a1^3"}, w);
  auto res = sat_sagbi(s);
  EXPECT_EQ(res.status, SaturationStatus::Stabilized);
  EXPECT_TRUE(res.sagbi);
  auto g4 = P(r, "a1^4*a2 - 2/3*a1^3*a3^2 - a0*a1^2*a2^2 + 1/3*a0*a3^4 + 1/3*a0^2*a2^3");
  EXPECT_EQ(sorted(res.algebra.generators), sorted(polys(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3^2", g4.to_string()})));
  auto mg = min_gens(res.algebra);
  EXPECT_EQ(sorted(mg), sorted(res.algebra.generators));
}

TEST(SatSagbi, EssentialSigmaDegLexLeadingTermsIndependent) {
  auto r = Ring::make(Field::rationals(), 4, TermOrdering::from_matrix({{1, 1, 1, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}));
  auto gens = polys(r, {"a0", "a0*a2 - a1^2", "a0*a3^2 - a1^3"});
  std::vector<Term> lts;
  for (const auto& g : gens) lts.push_back(g.leading_term());
  EXPECT_EQ(lts[1], P(r, "a0*a2").leading_term());
  EXPECT_EQ(lts[2], P(r, "a0*a3^2").leading_term());
  EXPECT_TRUE(toric_ideal(lts).binomials.empty());
}

TEST(SatSagbi, InfiniteFiniteExample) {
  Grading w(IntMatrix{{1, 1, 1}, {-1, 0, 0}});
  auto r = graded_ring(w);
  auto s = pres(r, {"a0", "a0*a1", "a1 + a2", "a1*a2", "a1*a2^2"}, w);
  auto res = sat_sagbi(s);
  EXPECT_EQ(res.status, SaturationStatus::Stabilized);
  EXPECT_EQ(sorted(res.algebra.generators), sorted(polys(r, {"a0", "a1 + a2", "a2"})));
}

TEST(SatSagbi, InfiniteSagbiHitsIterationLimit) {
  auto w = Grading::standard(3);
  auto r = graded_ring(w);
  auto s = pres(r, {"a0", "a1 + a2", "a1*a2", "a1*a2^2"}, w);
  SaturationOptions opts;
  opts.max_iterations = 3;
  auto res = sat_sagbi(s, opts);
  EXPECT_EQ(res.status, SaturationStatus::IterationLimit);
  EXPECT_FALSE(res.sagbi);
  EXPECT_GT(res.algebra.size(), 4u);
}

TEST(SatSagbi, SatInterredNotEnoughExample) {
  auto r = Ring::make(Field::rationals(), 3, TermOrdering::from_matrix({{1, 1, 1}, {-1, 0, 0}, {0, 0, -1}}));
  auto w = Grading::standard(3);
  auto s = pres(r, {"a0", "a1*a2 - a0*a1 + a0*a2", "a1^2 - a2^2 + a0*a1", "a1^3 - a0*a2^2"}, w);
  auto res = sat_sagbi(s);
  ASSERT_EQ(res.status, SaturationStatus::Stabilized);
  ASSERT_EQ(res.algebra.size(), 5u);
  auto g5 = P(r,
              "a2^6 - 8*a0*a1^3*a2^2 - 6*a0*a1^2*a2^3 + 3*a0*a1*a2^4 + 6*a0^2*a1*a2^3 + 4*a0^2*a2^4"
              " - 6*a0^3*a1^2*a2 - 12*a0^3*a1*a2^2 + 12*a0^3*a2^3 - a0^4*a2^2 - 9*a0^5*a1 + 6*a0^5*a2");
  EXPECT_EQ(res.algebra.generators.back().leading_term(), g5.leading_term());
  auto mg = min_gens(res.algebra);
  EXPECT_EQ(mg.size(), 4u);
  EXPECT_EQ(member(g5, SubalgebraPresentation::make(mg, w)).verdict, Verdict::In);
}

TEST(SatSagbi, StandardGradedExample) {
  auto w = Grading::standard(3);
  auto r = graded_ring(w);
  auto s = pres(r, {"a0", "a1^2 - a2^2 + a0*a2", "a1*a2 - a2^2 + a0*a1", "a1^3", "a2^4"}, w);
  auto res = sat_sagbi(s);
  ASSERT_EQ(res.status, SaturationStatus::Stabilized);
  EXPECT_EQ(res.algebra.size(), 11u);
  for (long d = 1; d <= 12; ++d) EXPECT_TRUE(sagbi_in_degree(res.algebra.generators, {1, 1, 1}, d)) << d;
  auto mg = min_gens(res.algebra);
  ASSERT_EQ(mg.size(), 8u);
  std::vector<Term> lts;
  for (const auto& g : mg) lts.push_back(g.leading_term());
  std::vector<Term> expected_lts;
  for (const char* t : {"a0", "a1*a2", "a1^2", "a1^3", "a2^4", "a1^3*a2^2", "a2^7", "a1*a2^6"})
    expected_lts.push_back(P(r, t).leading_term());
  EXPECT_EQ(lts, expected_lts);
  EXPECT_EQ(mg[5], P(r, "a1^3*a2^2 - 23/15*a1^2*a2^3 - 11/45*a1*a2^4 + 44/45*a2^5 - 5/18*a0*a1*a2^3"
                        " + 6/5*a0^2*a1^2*a2 - 23/30*a0^2*a1*a2^2 + 5/6*a0^2*a2^3 - 1/5*a0^3*a2^2"
                        " + 11/15*a0^4*a1 - 1/2*a0^4*a2"));
  EXPECT_EQ(mg[6], P(r, "a2^7 - 295/2*a0^2*a1^2*a2^3 - 65/6*a0^2*a1*a2^4 + 119/6*a0^2*a2^5"
                        " + 1217/12*a0^3*a1*a2^3 - 30*a0^4*a1^2*a2 + 319/4*a0^4*a1*a2^2 - 275/4*a0^4*a2^3"
                        " - 42*a0^5*a2^2 + 65/2*a0^6*a1 + 219/4*a0^6*a2"));
  EXPECT_EQ(mg[7], P(r, "a1*a2^6 - 576/5*a0^2*a1^2*a2^3 - 179/30*a0^2*a1*a2^4 + 193/15*a0^2*a2^5"
                        " + 214/3*a0^3*a1*a2^3 - 54/5*a0^4*a1^2*a2 + 262/5*a0^4*a1*a2^2 - 60*a0^4*a2^3"
                        " - 126/5*a0^5*a2^2 + 239/10*a0^6*a1 + 39*a0^6*a2"));
}

TEST(SatSagbi, RejectsInhomogeneousInput) {
  auto w = Grading::standard(3);
  auto r = graded_ring(w);
  SubalgebraPresentation s{r, {P(r, "a0"), P(r, "a1 + a2^2")}, w};
  EXPECT_THROW(sat_sagbi(s), NotGraded);
}

TEST(SatSagbi, RejectsOrderingOfWrongType) {
  auto w = Grading::standard(3);
  auto r = Ring::make(Field::rationals(), 3, TermOrdering::from_matrix({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}}), w);
  auto s = pres(r, {"a0", "a1^2 - a0*a2"}, w);
  EXPECT_THROW(sat_sagbi(s), OrderingNotDegRevType);
}

TEST(SatSagbi, AddsMissingA0) {
  auto w = Grading::standard(3);
  auto r = graded_ring(w);
  auto res = sat_sagbi(pres(r, {"a1^2 - a0*a2"}, w));
  EXPECT_NE(std::find(res.algebra.generators.begin(), res.algebra.generators.end(), P(r, "a0")),
            res.algebra.generators.end());
}

// ------------------------------------------------------------ trunc_sat_sagbi

TEST(TruncSatSagbi, RejectsBadShape) {
  auto w = Grading::standard(3);
  auto r = graded_ring(w);
  EXPECT_THROW(trunc_sat_sagbi(pres(r, {"a0", "a1^2 - a0*a2"}, w), 4), BadGradingShape);
  Grading w2(IntMatrix{{0, 1, 0}, {1, 1, 1}});
  auto r2 = graded_ring(Grading(IntMatrix{{0, 1, 1}, {1, 1, 1}}));
  EXPECT_THROW(trunc_sat_sagbi(SubalgebraPresentation{r2, {P(r2, "a0")}, w2}, 4), BadGradingShape);
}

TEST(TruncSatSagbi, BelowEveryRelationReturnsInput) {
  Grading w(IntMatrix{{0, 1, 2}, {1, 1, 1}});
  auto r = graded_ring(w);
  auto s = pres(r, {"a0", "a1^2 - 2*a0*a2"}, w);
  auto res = trunc_sat_sagbi(s, 3);
  EXPECT_EQ(res.status, SaturationStatus::Stabilized);
  EXPECT_TRUE(res.sagbi);
  EXPECT_EQ(res.truncation_degree, 3);
  EXPECT_EQ(sorted(res.algebra.generators), sorted(s.generators));
}

TEST(TruncSatSagbi, U3Invariant) {
  Grading w(IntMatrix{{0, 1, 2, 3}, {1, 1, 1, 1}});
  auto r = graded_ring(w);
  auto s = pres(r, {"a0", "-1/2*a1^2 + a0*a2", "1/3*a1^3 - a0*a1*a2 + a0^2*a3"}, w);
  auto res = trunc_sat_sagbi(s, 6);
  ASSERT_EQ(res.status, SaturationStatus::Stabilized);
  auto g4 = P(r, "a1^2*a2^2 - 2*a1^3*a3 - 8/3*a0*a2^3 + 6*a0*a1*a2*a3 - 3*a0^2*a3^2").monic();
  auto& gens = res.algebra.generators;
  EXPECT_NE(std::find(gens.begin(), gens.end(), g4), gens.end());
}

TEST(TruncSatSagbi, TruncationIsStableUnderHigherBound) {
  Grading w(IntMatrix{{0, 1, 2, 3}, {1, 1, 1, 1}});
  auto r = graded_ring(w);
  auto s = pres(r, {"a0", "-1/2*a1^2 + a0*a2", "1/3*a1^3 - a0*a1*a2 + a0^2*a3"}, w);
  auto low = trunc_sat_sagbi(s, 6);
  auto high = trunc_sat_sagbi(s, 9);
  std::vector<Polynomial> cut;
  for (const auto& g : high.algebra.generators) {
    if (w.degree(g.leading_exponents())[0] <= 6) cut.push_back(g);
  }
  EXPECT_EQ(sorted(cut), sorted(low.algebra.generators));
}

// ------------------------------------------------------------------- min_gens

TEST(MinGens, SatInterredNotEnoughExample) {
  auto r = Ring::make(Field::rationals(), 3, TermOrdering::from_matrix({{1, 1, 1}, {-1, 0, 0}, {0, 0, -1}}));
  auto w = Grading::standard(3);
  auto g5 = "a2^6 - 8*a0*a1^3*a2^2 - 6*a0*a1^2*a2^3 + 3*a0*a1*a2^4 + 6*a0^2*a1*a2^3 + 4*a0^2*a2^4"
            " - 6*a0^3*a1^2*a2 - 12*a0^3*a1*a2^2 + 12*a0^3*a2^3 - a0^4*a2^2 - 9*a0^5*a1 + 6*a0^5*a2";
  auto s = pres(r, {"a0", "a1*a2 - a0*a1 + a0*a2", "a1^2 - a2^2 + a0*a1", "a1^3 - a0*a2^2", g5}, w);
  auto mg = min_gens(s);
  EXPECT_EQ(sorted(mg), sorted(polys(r, {"a0", "a1*a2 - a0*a1 + a0*a2", "a1^2 - a2^2 + a0*a1", "a1^3 - a0*a2^2"})));
}

TEST(MinGens, AlreadyMinimalIsUnchanged) {
  auto w = Grading::standard(3);
  auto r = graded_ring(w);
  auto s = pres(r, {"a0", "a1^2", "a2^3"}, w);
  EXPECT_EQ(min_gens(s), s.generators);
}

TEST(MinGens, LinearDependenceInOneDegree) {
  auto w = Grading::standard(3);
  auto r = graded_ring(w);
  auto s = pres(r, {"a1^2 + a2^2", "a1^2 - a2^2", "a2^2", "a1^4"}, w);
  EXPECT_EQ(min_gens(s).size(), 2u);
}

TEST(MinGens, RejectsInhomogeneous) {
  auto w = Grading::standard(2);
  auto r = graded_ring(w);
  SubalgebraPresentation s{r, {P(r, "a0 + a1^2")}, w};
  EXPECT_THROW(min_gens(s), NotGraded);
}

TEST(MinGens, PositiveRowOfBigrading) {
  EXPECT_EQ(positive_row(Grading(IntMatrix{{0, 1, 2, 3}, {1, 1, 1, 1}})), (std::vector<long>{1, 2, 3, 4}));
  EXPECT_EQ(positive_row(Grading(IntMatrix{{1, 0}, {-7, 2}})), (std::vector<long>{1, 2}));
  EXPECT_THROW(positive_row(Grading(IntMatrix{{1, 0}, {0, 0}})), NotGraded);
}

// ------------------------------------------------------------- weak saturation

TEST(WeakSaturation, LinearWitnessMatchesSaturation) {
  auto r = qq_ring(4);
  auto s = pres(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3"});
  auto z = Ring::make(Field::rationals(), 1, std::nullopt, std::nullopt, "z");
  auto weak = weak_saturate_with_witness(s, P(r, "a0"), P(z, "z0"));
  auto plain = subalgebra_saturation(s, P(r, "a0"));
  EXPECT_EQ(weak.algebra.generators, plain.algebra.generators);
  EXPECT_EQ(weak.status, plain.status);
}

TEST(WeakSaturation, QuadraticWitness) {
  auto r = qq_ring(2);
  auto s = pres(r, {"a0^2 + a0"});
  auto z = Ring::make(Field::rationals(), 1, std::nullopt, std::nullopt, "z");
  auto res = weak_saturate_with_witness(s, P(r, "a0"), P(z, "z0^2 + z0"));
  EXPECT_EQ(res.status, SaturationStatus::Stabilized);
  EXPECT_EQ(member(P(r, "a0"), res.algebra).verdict, Verdict::In);
  EXPECT_EQ(member(P(r, "a1"), res.algebra).verdict, Verdict::Out);
}

TEST(WeakSaturation, Rejections) {
  auto r = qq_ring(2);
  auto s = pres(r, {"a0^2 + a0"});
  auto z = Ring::make(Field::rationals(), 1, std::nullopt, std::nullopt, "z");
  EXPECT_THROW(weak_saturate_with_witness(s, P(r, "a0"), P(z, "3")), WitnessNotInS);
  EXPECT_THROW(weak_saturate_with_witness(s, P(r, "a0"), P(z, "z0^3")), WitnessNotInS);
}

// ----------------------------------------------------------------- properties

// Random standard-graded algebras K[a0, t_i + a0*q_i] with monomial t_i.
SubalgebraPresentation random_graded(std::mt19937_64& rng, const RingPtr& r, const Grading& w) {
  std::uniform_int_distribution<int> count(2, 3), deg(2, 3), co(-2, 2);
  std::vector<Polynomial> gens{P(r, "a0")};
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    const int d = deg(rng);
    std::vector<std::pair<Term, FieldElement>> terms;
    std::vector<int> e(3, 0);
    e[1] = static_cast<int>(rng() % (d + 1));
    e[2] = d - e[1];
    terms.emplace_back(Term(e), FieldElement::one(r->field()));
    for (int j = 0; j < 2; ++j) {
      std::vector<int> f(3, 0);
      f[0] = 1;
      f[1] = static_cast<int>(rng() % d);
      f[2] = d - 1 - f[1];
      terms.emplace_back(Term(f), FieldElement(r->field(), static_cast<long>(co(rng))));
    }
    auto p = Polynomial::from_terms(r, terms);
    if (!p.is_zero()) gens.push_back(p);
  }
  return SubalgebraPresentation::make(gens, w);
}

TEST(SatSagbiProperty, OutputIsA0Saturated) {
  std::mt19937_64 rng(21);
  auto w = Grading::standard(3);
  auto r = graded_ring(w);
  const Polynomial a0 = P(r, "a0");
  int stabilized = 0;
  for (int it = 0; it < kIterations; ++it) {
    auto s = random_graded(rng, r, w);
    SaturationOptions opts;
    opts.max_iterations = 6;
    auto res = sat_sagbi(s, opts);
    if (res.status == SaturationStatus::Stabilized) {
      ++stabilized;
      for (long d = 1; d <= 5; ++d) EXPECT_TRUE(sagbi_in_degree(res.algebra.generators, {1, 1, 1}, d)) << d;
    }
    for (const auto& h : res.algebra.generators) {
      if (h == a0) continue;
      EXPECT_EQ(saturate_poly(h, a0).exponent, 0u) << h;
      EXPECT_EQ(h.leading_exponents()[0], 0) << h;
    }
    for (const auto& g : s.generators) EXPECT_EQ(member(g, res.algebra).verdict, Verdict::In) << g;
  }
  EXPECT_GE(stabilized, kIterations / 2);
}

TEST(MinGensProperty, DegreeMultisetIsInvariant) {
  std::mt19937_64 rng(22);
  auto w = Grading::standard(3);
  auto r = graded_ring(w);
  for (int it = 0; it < kIterations; ++it) {
    auto s = random_graded(rng, r, w);
    // A second presentation: extra products and sums of same-degree generators.
    std::vector<Polynomial> more = s.generators;
    const auto& g = s.generators;
    more.push_back(g[1] * g[1]);
    more.push_back(g[0] * g[1]);
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
      if (w.degree(g[i].leading_exponents()) == w.degree(g[i + 1].leading_exponents())) more.push_back(g[i] + g[i + 1]);
    }
    std::shuffle(more.begin(), more.end(), rng);
    std::vector<Polynomial> homog;
    for (const auto& p : more) {
      if (is_homogeneous(p, w)) homog.push_back(p);
    }
    auto t = SubalgebraPresentation::make(homog, w);
    auto row = positive_row(w);
    EXPECT_EQ(degree_multiset(min_gens(s), row), degree_multiset(min_gens(t), row));
  }
}

}  // namespace
