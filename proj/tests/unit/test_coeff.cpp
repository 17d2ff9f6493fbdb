#include <gtest/gtest.h>

#include <random>

#include "sagbisat/coeff.hpp"
#include "sagbisat/error.hpp"

using namespace sagbisat;

namespace {

constexpr int kIterations = 200;

// Inverse by brute search, independent of the library's extended Euclid.
std::uint64_t brute_inverse(std::uint64_t a, std::uint64_t p) {
  for (std::uint64_t x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  return 0;
}

FieldElement random_element(const Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-50, 50);
  if (f.is_rational()) {
    long den = d(rng);
    if (den == 0) den = 1;
    return FieldElement(f, mpq_class(d(rng), den > 0 ? den : -den));
  }
  return FieldElement(f, d(rng));
}

}  // namespace

TEST(Coeff, InvFactorialSmallCases) {
  EXPECT_TRUE(inv_factorial(0, Field::rationals()).is_one());
  EXPECT_EQ(inv_factorial(4, Field::rationals()).rational(), mpq_class(1, 24));
}

TEST(Coeff, InvFactorialModPrime) {
  const Field f = Field::prime(101);
  const std::uint64_t oracle = brute_inverse(720 % 101, 101);
  ASSERT_EQ(720 * oracle % 101, 1u);
  EXPECT_EQ(oracle, 70u);
  EXPECT_EQ(inv_factorial(6, f).residue(), oracle);
}

TEST(Coeff, InvFactorialUndefinedAtCharacteristic) {
  EXPECT_THROW(inv_factorial(7, Field::prime(7)), DividedPowerUndefined);
  EXPECT_NO_THROW(inv_factorial(6, Field::prime(7)));
}

TEST(Coeff, RationalsStayReduced) {
  FieldElement a(Field::rationals(), mpq_class(6, -4));
  EXPECT_EQ(a.rational().get_num(), -3);
  EXPECT_EQ(a.rational().get_den(), 2);
  EXPECT_EQ(FieldElement::parse(Field::rationals(), "2/3").rational(), mpq_class(2, 3));
  EXPECT_EQ(FieldElement::parse(Field::rationals(), "-10/4").to_string(), "-5/2");
}

TEST(Coeff, ResiduesInRange) {
  const Field f = Field::prime(101);
  EXPECT_EQ(FieldElement(f, -1L).residue(), 100u);
  EXPECT_EQ(FieldElement(f, 202L).residue(), 0u);
  EXPECT_EQ(FieldElement(f, mpq_class(1, 2)).residue(), 51u);
}

TEST(Coeff, MixedFieldsRejected) {
  FieldElement a(Field::rationals(), 1L), b(Field::prime(5), 1L), c(Field::prime(7), 1L);
  EXPECT_THROW(a + b, FieldMismatch);
  EXPECT_THROW(b * c, FieldMismatch);
}

TEST(Coeff, PrimeFieldValidation) {
  EXPECT_THROW(Field::prime(100), InvalidArgument);
  EXPECT_THROW(Field::prime(1), InvalidArgument);
  EXPECT_NO_THROW(Field::prime(9223372036854775783ULL));
  EXPECT_EQ(Field::prime(101).name(), "ZZ/101");
}

TEST(Coeff, DivisionByZero) {
  EXPECT_THROW(FieldElement::zero(Field::rationals()).inverse(), DivisionByZero);
  EXPECT_THROW(FieldElement::zero(Field::prime(3)).inverse(), DivisionByZero);
}

TEST(Coeff, LargePrimeInverse) {
  const Field f = Field::prime(9223372036854775783ULL);
  std::mt19937_64 rng(7);
  for (int i = 0; i < kIterations; ++i) {
    FieldElement a(f, static_cast<long>(rng() >> 2));
    if (a.is_zero()) continue;
    EXPECT_TRUE((a * a.inverse()).is_one());
  }
}

class FieldAxioms : public ::testing::TestWithParam<Field> {};

TEST_P(FieldAxioms, RandomTriples) {
  const Field f = GetParam();
  std::mt19937_64 rng(42);
  for (int i = 0; i < kIterations; ++i) {
    FieldElement a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
    if (!a.is_zero()) {
      EXPECT_TRUE((a * a.inverse()).is_one());
      EXPECT_EQ(b / a * a, b);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values(Field::rationals(), Field::prime(101), Field::prime(2),
                                           Field::prime(2147483647)));
