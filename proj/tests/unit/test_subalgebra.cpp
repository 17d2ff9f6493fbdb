#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "sagbisat/error.hpp"
#include "sagbisat/subalgebra.hpp"

using namespace sagbisat;
using namespace sagbisat::testing;

namespace {

constexpr int kIterations = 110;

RingPtr matrix_ring(IntMatrix m) {
  const std::size_t n = m.size();
  return Ring::make(Field::rationals(), n, TermOrdering::from_matrix(std::move(m)));
}

// Keeps the given order and scaling, unlike SubalgebraPresentation::make.
SubalgebraPresentation raw(const RingPtr& r, const std::vector<std::string>& gens) {
  SubalgebraPresentation s{r, {}, std::nullopt};
  for (const auto& g : gens) s.generators.push_back(P(r, g));
  return s;
}

std::vector<Polynomial> polys(const RingPtr& r, const std::vector<std::string>& gens) {
  std::vector<Polynomial> out;
  for (const auto& g : gens) out.push_back(P(r, g));
  return out;
}

bool equal_up_to_sign(const Polynomial& a, const Polynomial& b) { return a == b || a == -b; }

void expect_certified(const Polynomial& f, const SubalgebraPresentation& s) {
  auto cert = member(f, s);
  ASSERT_EQ(cert.verdict, Verdict::In) << f;
  ASSERT_TRUE(cert.witness);
  EXPECT_EQ(cert.witness->substitute(s.ring, s.generators), f);
}

// g^k h in s for some k <= 10.
bool in_saturation(const Polynomial& h, const Polynomial& g, const SubalgebraPresentation& s) {
  Polynomial p = h;
  for (int k = 0; k <= 10; ++k) {
    if (member(p, s).verdict == Verdict::In) return true;
    p = p * g;
  }
  return false;
}

// --------------------------------------------------------------- membership

TEST(Member, GeneratorHasVariableWitness) {
  auto r = qq_ring(3);
  auto s = SubalgebraPresentation::make(polys(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a2^2"}));
  auto cert = member(s.generators[0], s);
  ASSERT_EQ(cert.verdict, Verdict::In);
  EXPECT_EQ(*cert.witness, P(cert.witness->ring(), "x1"));
}

TEST(Member, DependExampleWitnesses) {
  auto r = qq_ring(3);
  const std::string g1 = "a1^2 - a0^2*a2", g2 = "a1*a2 - a0", g3 = "a2^2", g4 = "a1*a2^2", g = "a0";
  const std::string h1 = "-2*a1*a2 + a0*a2^3 + a0", h2p = "-2*a1*a2^3 + a0*a2^2", h2t = "-a0*a2^5";
  auto s1 = raw(r, {g1, g2, g3, g4, g, h1, h2p});
  auto s2 = raw(r, {g1, g2, g3, g4, g, h1, h2t});
  auto c1 = member(P(r, h2t), s1);
  ASSERT_EQ(c1.verdict, Verdict::In);
  EXPECT_EQ(c1.witness->to_string(), "-x3*x6 + x7");
  auto c2 = member(P(r, h2p), s2);
  ASSERT_EQ(c2.verdict, Verdict::In);
  EXPECT_EQ(c2.witness->to_string(), "x3*x6 + x7");
  EXPECT_EQ(member(P(r, "-a2^5"), s1).verdict, Verdict::Out);
}

TEST(Member, ConstantsAreMembers) {
  auto r = qq_ring(2);
  auto s = SubalgebraPresentation::make(polys(r, {"a0*a1"}));
  EXPECT_EQ(member(P(r, "7"), s).verdict, Verdict::In);
  EXPECT_EQ(member(P(r, "a0"), s).verdict, Verdict::Out);
}

TEST(Member, TruncatedOracleAgreesWithFull) {
  auto r = qq_ring(3);
  auto s = SubalgebraPresentation::make(polys(r, {"a0", "a1^2 - a0*a2", "a1*a2"}), Grading::standard(3));
  for (const auto* f : {"a1^4 - 2*a0*a1^2*a2 + a0^2*a2^2", "a1^2*a2^2", "a1^3*a2", "a0*a1*a2 + a1^3"}) {
    auto full = MembershipOracle(s).test(P(r, f));
    auto trunc = MembershipOracle(s, 4).test(P(r, f));
    EXPECT_EQ(full.verdict, trunc.verdict) << f;
    if (full.verdict == Verdict::In) EXPECT_EQ(trunc.witness->substitute(r, s.generators), P(r, f));
  }
}

TEST(MemberProperty, WitnessReproducesQuery) {
  std::mt19937_64 rng(101);
  auto r = qq_ring(3);
  int in = 0;
  for (int it = 0; it < kIterations; ++it) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 2 + it % 2; ++k) gens.push_back(random_poly(r, rng, 2, 2));
    auto s = SubalgebraPresentation::make(gens);
    if (s.generators.empty()) continue;
    auto x = relation_ring(r->field(), s.size());
    Polynomial f = random_poly(x, rng, 3, 2).substitute(r, s.generators);
    if (it % 3 == 0) f += random_poly(r, rng, 1, 3);
    auto cert = member(f, s);
    if (cert.verdict == Verdict::In) {
      EXPECT_EQ(cert.witness->substitute(r, s.generators), f);
      ++in;
    }
    if (it % 3 != 0) EXPECT_EQ(cert.verdict, Verdict::In) << f;
  }
  EXPECT_GT(in, kIterations / 2);
}

// ------------------------------------------------------------- relations

TEST(RelModG, TerminatesExample) {
  auto r = qq_ring(4);
  auto s = SubalgebraPresentation::make(polys(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3"}));
  auto rel = rel_mod_g(s, P(r, "a0"));
  ASSERT_EQ(rel.size(), 2u);
  auto x = rel[0].ring();
  EXPECT_EQ(rel[0], P(x, "x1"));
  EXPECT_TRUE(equal_up_to_sign(rel[1], P(x, "x3^2 - x2^3")));
}

TEST(RelModG, NonSatReduceExample) {
  auto r = qq_ring(3);
  auto s = raw(r, {"a0", "a1 - a0*a1^2", "a2", "a1*a2"});
  auto rel = rel_mod_g(s, P(r, "a0"));
  ASSERT_EQ(rel.size(), 2u);
  auto x = rel[0].ring();
  EXPECT_EQ(rel[0], P(x, "x1"));
  EXPECT_TRUE(equal_up_to_sign(rel[1], P(x, "x4 - x2*x3")));
}

TEST(RelModG, IndependentImages) {
  auto r = qq_ring(3);
  auto s = raw(r, {"a0", "a1 + a0*a2", "a2"});
  auto rel = rel_mod_g(s, P(r, "a0"));
  ASSERT_EQ(rel.size(), 1u);
  EXPECT_EQ(rel[0], P(rel[0].ring(), "x1"));
}

// ------------------------------------------------------------- reduction

const IntMatrix kSagbiremOrder{{1, 1, 1}, {-1, 0, 0}, {0, -1, 0}};
const char* kH = "a1*a2^6 - 4*a0^5*a1*a2 + 4*a0^5*a1^2 + a0^6*a2 + a0^7";

TEST(Reduction, SingleStepExample) {
  auto r = matrix_ring(kSagbiremOrder);
  auto g = polys(r, {"a0", "a1*a2 - a1^2", "a2^2", "a1*a2^2"});
  auto step = slt_reduction_step(P(r, kH), g);
  ASSERT_TRUE(step);
  EXPECT_EQ(*step, P(r, "-4*a0^5*a1*a2 + 4*a0^5*a1^2 + a0^6*a2 + a0^7"));
  EXPECT_EQ(*slt_reduction_step(g[3], g), P(r, "0"));
  EXPECT_FALSE(slt_reduction_step(P(r, "a1"), g));
}

TEST(Reduction, RemainderExample) {
  auto r = matrix_ring(kSagbiremOrder);
  auto g = polys(r, {"a0", "a1*a2 - a1^2", "a2^2", "a1*a2^2"});
  auto rem = s_remainder(P(r, kH), g);
  EXPECT_EQ(rem, P(r, "a0^6*a2"));
  EXPECT_EQ(saturate_poly(rem, P(r, "a0")).value, P(r, "a2"));
  EXPECT_TRUE(s_remainder(P(r, "a0^3*a2^4 - 2*a0*a1*a2^2"), g).is_zero());
}

TEST(Reduction, DegreeSevenRelationRemainder) {
  auto r = matrix_ring({{1, 1, 1}, {-1, 0, 0}, {0, 0, -1}});
  auto g = polys(r, {"a0", "a1*a2 - a0*a1 + a0*a2", "a1^2 - a2^2 + a0*a1", "a1^3 - a0*a2^2"});
  auto x = relation_ring(r->field(), 4);
  auto rel = P(x, "x2^6 + 3*x2^2*x3*x4^2 + x3^3*x4^2 - x4^4");
  auto e = rel.substitute(r, g);
  auto h = saturate_poly(e, P(r, "a0")).value;
  auto rem = s_remainder(h, g);
  auto s = raw(r, {"a0", "a1*a2 - a0*a1 + a0*a2", "a1^2 - a2^2 + a0*a1", "a1^3 - a0*a2^2"});
  EXPECT_EQ(saturate_poly(rem, P(r, "a0")).exponent, 0u);
  const std::string printed =
      "a1^5*a2^6 - 6*a1^4*a2^7 - a1^3*a2^8 + 40*a0*a1^4*a2^6 - 2*a0*a1^3*a2^7 - 45*a0*a1^2*a2^8"
      " - 40*a0*a1*a2^9 - 10*a0*a2^10 + 107*a0^2*a1^5*a2^4 + 484*a0^2*a1^4*a2^5 + 441*a0^2*a1^3*a2^6"
      " + 38*a0^2*a1^2*a2^7 - 101*a0^2*a1*a2^8 - 40*a0^2*a2^9 - 808*a0^3*a1^3*a2^5 + 615*a0^3*a1^2*a2^6"
      " + 116*a0^3*a1*a2^7 - 39*a0^3*a2^8 - 3798*a0^4*a1^4*a2^3 + 4935*a0^4*a1^3*a2^4"
      " - 3846*a0^4*a1^2*a2^5 + 304*a0^4*a1*a2^6 + 82*a0^4*a2^7 + 23372*a0^5*a1^2*a2^4"
      " - 2720*a0^5*a1*a2^5 + 90*a0^5*a2^6 - 50860*a0^6*a1^3*a2^2 + 5256*a0^6*a1^2*a2^3"
      " + 30105*a0^6*a1*a2^4 - 166*a0^6*a2^5 + 78690*a0^7*a1*a2^3 + 8438*a0^7*a2^4"
      " - 228828*a0^8*a1^2*a2 + 63304*a0^8*a1*a2^2 + 77232*a0^8*a2^3 + 258692*a0^9*a2^2"
      " - 369708*a0^10*a1 + 228828*a0^10*a2";
  auto expected = P(r, printed);
  EXPECT_EQ(expected.num_terms(), 38u);
  EXPECT_EQ(rem.leading_term(), expected.leading_term());
  // Remainders depend on the reduction path; both must lie in S and agree modulo S.
  expect_certified(expected, s);
  expect_certified(rem, s);
}

TEST(ReductionProperty, DifferenceLiesInSubalgebra) {
  std::mt19937_64 rng(103);
  auto r = qq_ring(3);
  for (int it = 0; it < kIterations; ++it) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_poly(r, rng, 2, 2));
    auto s = SubalgebraPresentation::make(gens);
    if (s.generators.empty()) continue;
    Polynomial h = random_poly(r, rng, 4, 3);
    SubalgebraReducer red(s.generators);
    Polynomial rem = red.remainder(h);
    for (std::size_t i = 0; i < rem.num_terms(); ++i) EXPECT_FALSE(red.represent(rem.exponents(i)));
    Polynomial diff = h - rem;
    if (!diff.is_zero()) expect_certified(diff, s);
  }
}

// ------------------------------------------------------- sat-interreduction

TEST(SatInterreduce, NonHomogeneousExample) {
  auto r = qq_ring(3);
  auto s = SubalgebraPresentation::make(polys(r, {"a0", "a1", "a0*a2^2 - a1"}));
  auto out = sat_interreduce(s, P(r, "a0"));
  EXPECT_EQ(out.generators, SubalgebraPresentation::make(polys(r, {"a0", "a1", "a2^2"})).generators);
}

TEST(SatInterreduce, DegRevExample) {
  auto r = matrix_ring(kSagbiremOrder);
  auto s = SubalgebraPresentation::make(polys(r, {"a0", "a1*a2 - a1^2", "a2^2", "a1*a2^2", kH}));
  auto out = sat_interreduce(s, P(r, "a0"));
  auto expected = SubalgebraPresentation::make(polys(r, {"a0", "a2", "a1*a2 - a1^2", "a1^2*a2"}));
  EXPECT_EQ(out.generators, expected.generators);
  EXPECT_EQ(sat_interreduce(out, P(r, "a0")).generators, out.generators);
}

TEST(SatInterreduce, RejectsSaturatingElementOutside) {
  auto r = qq_ring(2);
  auto s = SubalgebraPresentation::make(polys(r, {"a1"}));
  EXPECT_THROW(sat_interreduce(s, P(r, "a0")), GNotInS);
}

TEST(SatInterreduceProperty, BetweenSAndSaturation) {
  std::mt19937_64 rng(107);
  auto r = qq_ring(3);
  const Polynomial g = P(r, "a0");
  for (int it = 0; it < kIterations; ++it) {
    std::vector<Polynomial> gens{g};
    for (int k = 0; k < 2; ++k) gens.push_back(random_poly(r, rng, 3, 2));
    auto s = SubalgebraPresentation::make(gens);
    auto a = sat_interreduce(s, g);
    for (const auto& gen : s.generators) EXPECT_EQ(member(gen, a).verdict, Verdict::In) << gen;
    for (const auto& h : a.generators) {
      EXPECT_TRUE(in_saturation(h, g, s)) << h;
      EXPECT_EQ(saturate_poly(h, g).exponent, h == g ? 1u : 0u);
    }
    EXPECT_EQ(sat_interreduce(a, g).generators, a.generators);
  }
}

// ------------------------------------------------------------------- E_g

TEST(Enlarge, TerminatesExampleAddsPrintedGenerator) {
  auto r = qq_ring(4);
  auto s = SubalgebraPresentation::make(polys(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3"}));
  auto e = enlarge(s, P(r, "a0"));
  ASSERT_EQ(e.added.size(), 1u);
  EXPECT_EQ(e.added[0], P(r, "a1^4*a2 - 2/3*a1^3*a3 - a0*a1^2*a2^2 + 1/3*a0*a3^2 + 1/3*a0^2*a2^3"));
  EXPECT_EQ(e.exponents[0], 1u);
  EXPECT_EQ(e.algebra.size(), 4u);
  EXPECT_TRUE(enlarge(e.algebra, P(r, "a0")).added.empty());
}

TEST(Enlarge, NonSatReduceFirstStep) {
  auto r = qq_ring(3);
  auto s = SubalgebraPresentation::make(polys(r, {"a0", "a1 - a0*a1^2", "a2", "a1*a2"}));
  auto e = enlarge(s, P(r, "a0"));
  ASSERT_EQ(e.added.size(), 1u);
  EXPECT_EQ(e.added[0], P(r, "a1^2*a2"));
}

TEST(Enlarge, SaturatedAlgebraUnchanged) {
  auto r = qq_ring(2);
  auto s = SubalgebraPresentation::make(polys(r, {"a0", "a1"}));
  EXPECT_EQ(enlarge_E(s, P(r, "a0")).generators, s.generators);
}

// Both generating sets of Rel_g give the same K[S:g] (colon algebra).
TEST(Enlarge, ColonAlgebraIndependentOfRelationGenerators) {
  auto r = qq_ring(3);
  auto base = polys(r, {"a1^2 - a0^2*a2", "a1*a2 - a0", "a2^2", "a1*a2^2", "a0"});
  auto x = relation_ring(r->field(), 5);
  auto colon = [&](const std::vector<std::string>& rels) {
    auto gens = base;
    for (const auto& h : rels) {
      auto e = P(x, h).substitute(r, base);
      gens.push_back(*e.divide_exact(P(r, "a0")));
    }
    return SubalgebraPresentation{r, gens, std::nullopt};
  };
  auto a = colon({"x2^2 - x1*x3", "x1*x3^2 - x4^2", "x5"});
  auto b = colon({"x2^2 - x1*x3", "x2^2*x3 - x4^2", "x5"});
  for (const auto& f : a.generators) EXPECT_EQ(member(f, b).verdict, Verdict::In) << f;
  for (const auto& f : b.generators) EXPECT_EQ(member(f, a).verdict, Verdict::In) << f;
}

TEST(EnlargeProperty, AddedGeneratorsLieInSaturation) {
  std::mt19937_64 rng(109);
  auto r = qq_ring(3);
  const Polynomial g = P(r, "a0");
  int added = 0;
  for (int it = 0; it < kIterations; ++it) {
    std::vector<Polynomial> gens{g};
    for (int k = 0; k < 2; ++k) gens.push_back(random_poly(r, rng, 2, 2));
    auto s = SubalgebraPresentation::make(gens);
    auto e = enlarge(s, g);
    for (std::size_t i = 0; i < e.added.size(); ++i) {
      const Polynomial& h = e.added[i];
      EXPECT_LE(e.exponents[i], 10u);
      EXPECT_EQ(member(h, s).verdict, Verdict::Out);
      EXPECT_TRUE(in_saturation(h, g, s)) << h;
      ++added;
    }
  }
  EXPECT_GT(added, 5);
}

}  // namespace
