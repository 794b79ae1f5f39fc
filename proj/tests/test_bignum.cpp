#include <gtest/gtest.h>

#include <random>
#include <string>

#include "machin/bignum.hpp"
#include "oracle.hpp"

using machin::BigInt;
using machin::BigRational;
using machin::FixedReal;
using machin::RoundingMode;

namespace {

BigRational q(long n, long d) { return BigRational(BigInt(n), BigInt(d)); }

BigInt random_bigint(std::mt19937_64& rng, int limbs, bool allow_negative = true) {
  BigInt v = 0;
  for (int i = 0; i < limbs; ++i) v = v * BigInt(std::uint64_t{1} << 32U) + BigInt(static_cast<unsigned>(rng() >> 32U));
  if (allow_negative && (rng() & 1U) != 0) v = -v;
  return v;
}

BigRational random_rational(std::mt19937_64& rng) {
  BigInt den = random_bigint(rng, 2, false) + BigInt(1);
  return BigRational(random_bigint(rng, 3), den);
}

}  // namespace

TEST(BigRational, AddsFractions) { EXPECT_EQ(q(1, 3) + q(1, 6), q(1, 2)); }

TEST(BigRational, ZeroProductIsCanonical) {
  const BigRational z = BigRational(-7) * BigRational(0);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.den(), BigInt(1));
  EXPECT_EQ(z.num(), BigInt(0));
}

TEST(BigRational, ReducesOnConstruction) {
  const BigRational r(BigInt(-6), BigInt(-4));
  EXPECT_EQ(r.num(), BigInt(3));
  EXPECT_EQ(r.den(), BigInt(2));
  const BigRational s(BigInt(6), BigInt(-4));
  EXPECT_EQ(s.num(), BigInt(-3));
  EXPECT_EQ(s.den(), BigInt(2));
}

TEST(BigRational, LargeCoprimeValueStoredUnchanged) {
  const BigInt num = BigInt::from_string("38035138859000075702655846657186322249216830232319");
  const BigInt den = BigInt::from_string("2634699316100146880926635665506082395762836079845121");
  EXPECT_EQ(oracle::gcd(oracle::to_int(num), oracle::to_int(den)), 1);
  const BigRational r(num, den);
  EXPECT_EQ(r.num(), num);
  EXPECT_EQ(r.den(), den);
}

TEST(BigRational, DivisionByZeroIsAnError) {
  EXPECT_THROW(q(1, 2) / BigRational(0), machin::DivisionByZero);
  EXPECT_THROW(BigRational(BigInt(1), BigInt(0)), machin::DivisionByZero);
  EXPECT_THROW(BigRational(0).reciprocal(), machin::DivisionByZero);
}

TEST(BigRational, FromStringRejectsGarbage) {
  EXPECT_EQ(BigRational::from_string("-14/4"), q(-7, 2));
  EXPECT_THROW(BigRational::from_string("1/x"), machin::DomainError);
  EXPECT_THROW(BigRational::from_string(""), machin::DomainError);
}

TEST(BigRational, FieldPropertiesAndCanonicalForm) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const BigRational a = random_rational(rng);
    const BigRational b = random_rational(rng);
    EXPECT_EQ((a + b) - b, a);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.reciprocal(), BigRational(1));
    }
    for (const BigRational& r : {a + b, a - b, a * b}) {
      EXPECT_GT(r.den(), BigInt(0));
      EXPECT_EQ(oracle::gcd(oracle::to_int(r.num()), oracle::to_int(r.den())), 1);
    }
    if (!b.is_zero()) {
      const BigRational r = a / b;
      EXPECT_GT(r.den(), BigInt(0));
      EXPECT_EQ(oracle::gcd(oracle::to_int(r.num()), oracle::to_int(r.den())), 1);
    }
  }
}

TEST(BigInt, DigitCount) {
  EXPECT_EQ(BigInt(0).digit_count(), 1U);
  EXPECT_EQ(BigInt(9).digit_count(), 1U);
  EXPECT_EQ(BigInt(10).digit_count(), 2U);
  EXPECT_EQ(BigInt(-99999).digit_count(), 5U);
  EXPECT_EQ(BigInt::pow10(100).digit_count(), 101U);
  EXPECT_EQ((BigInt::pow10(100) - BigInt(1)).digit_count(), 100U);
}

TEST(Isqrt, Examples) {
  EXPECT_EQ(machin::isqrt(BigInt(0)), BigInt(0));
  EXPECT_EQ(machin::isqrt(BigInt::pow10(40)), BigInt::pow10(20));
  const BigInt r = machin::isqrt(BigInt(2) * BigInt::pow10(80));
  oracle::set_places(60);
  const std::string sqrt2 = oracle::to_fixed(boost::multiprecision::sqrt(oracle::Real(2)), 40).to_string();
  std::string expected = sqrt2;
  expected.erase(1, 1);  // drop the decimal point
  EXPECT_EQ(r.to_string(), expected);
  EXPECT_EQ(r.to_string(), "14142135623730950488016887242096980785696");
}

TEST(Isqrt, NegativeIsAnError) { EXPECT_THROW(machin::isqrt(BigInt(-1)), machin::DomainError); }

TEST(Isqrt, ContractExhaustiveBelow10000) {
  for (long n = 0; n < 10000; ++n) {
    const BigInt r = machin::isqrt(BigInt(n));
    ASSERT_LE(r * r, BigInt(n));
    ASSERT_GT((r + BigInt(1)) * (r + BigInt(1)), BigInt(n));
  }
}

TEST(Isqrt, ContractRandom256Bit) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const BigInt n = random_bigint(rng, 8, false);
    const BigInt r = machin::isqrt(n);
    ASSERT_LE(r * r, n);
    ASSERT_GT((r + BigInt(1)) * (r + BigInt(1)), n);
  }
}

TEST(FixedReal, ParseAndPrint) {
  EXPECT_EQ(FixedReal::parse("-0.014435").to_string(), "-0.014435");
  EXPECT_EQ(FixedReal::parse("3.14159").scale(), 5U);
  EXPECT_EQ(FixedReal(BigInt(-5), 3).to_string(), "-0.005");
  EXPECT_EQ(FixedReal(BigInt(42), 0).to_string(), "42");
  EXPECT_THROW(FixedReal::parse("3.1a"), machin::DomainError);
}

TEST(FixedReal, FromRationalTruncatesTowardZero) {
  EXPECT_EQ(FixedReal::from_rational(q(2, 3), 4).to_string(), "0.6666");
  EXPECT_EQ(FixedReal::from_rational(q(-2, 3), 4).to_string(), "-0.6666");
}

TEST(FixedReal, MulDivAndComparison) {
  const FixedReal a = FixedReal::parse("1.5");
  const FixedReal b = FixedReal::parse("-0.25");
  EXPECT_EQ(FixedReal::mul(a, b, 4).to_string(), "-0.3750");
  EXPECT_EQ(FixedReal::div(a, b, 2).to_string(), "-6.00");
  EXPECT_EQ(FixedReal::parse("0.50"), FixedReal::parse("0.5"));
  EXPECT_LT(b, a);
  EXPECT_THROW(FixedReal::div(a, FixedReal(BigInt(0), 3), 3), machin::DivisionByZero);
}

TEST(FixedSqrt, SqrtTwo) {
  EXPECT_EQ(machin::fixed_sqrt(FixedReal::from_integer(2, 0), 9).to_string(), "1.414213562");
  EXPECT_EQ(machin::fixed_sqrt(FixedReal::from_integer(2, 0), 10).to_string(), "1.4142135623");
}

TEST(FixedSqrt, NegativeIsAnError) {
  EXPECT_THROW(machin::fixed_sqrt(FixedReal::parse("-0.1"), 5), machin::DomainError);
}

TEST(FixedSqrt, SquareRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const BigRational x(BigInt(static_cast<long>(rng() % 1000000)), BigInt(static_cast<long>(rng() % 1000 + 1)));
    const std::size_t d = 20 + rng() % 40;
    const FixedReal xd = FixedReal::from_rational(x, d);
    const FixedReal sq = FixedReal::from_rational(x * x, 2 * d + 10);
    const FixedReal back = machin::fixed_sqrt(sq, d);
    EXPECT_LE((back - xd).abs(), FixedReal(BigInt(1), d)) << x;
  }
}

TEST(FixedSqrt, NestedRadicalResidual) {
  const FixedReal two = FixedReal::from_integer(2, 40);
  const FixedReal x = two + machin::fixed_sqrt(two, 40);
  const FixedReal r = machin::fixed_sqrt(x, 30);
  const FixedReal residual = (FixedReal::mul(r, r, 40) - x).abs();
  EXPECT_LT(residual, FixedReal(BigInt(1), 29));
}

TEST(FixedSqrt, RelativeResidualOnOneToFour) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 5 + rng() % 80;
    const BigRational x = BigRational(1) + BigRational(BigInt(static_cast<long>(rng() % 3000001)), BigInt(1000000));
    const FixedReal xf = FixedReal::from_rational(x, d + 20);
    const FixedReal r = machin::fixed_sqrt(xf, d);
    const FixedReal err = (FixedReal::mul(r, r, d + 20) - xf).abs();
    const FixedReal bound = FixedReal::mul(FixedReal(BigInt(10), d), xf, d + 20);
    EXPECT_LT(err, bound) << "d=" << d << " x=" << x;
  }
}

TEST(RoundToDigits, SignificantDigits) {
  const FixedReal y = FixedReal::parse("-0.0144358958054451040550");
  EXPECT_EQ(machin::round_to_digits(y, 6).to_string(), "-0.0144358");
  EXPECT_EQ(machin::round_to_digits(y, 6, RoundingMode::half_away).to_string(), "-0.0144359");
  EXPECT_EQ(machin::round_to_digits(y, 6).precision(), 6U);
  const FixedReal pi = FixedReal::parse("3.14159265358979");
  EXPECT_EQ(machin::round_to_digits(pi, 5).to_string(), "3.1415");
  EXPECT_EQ(machin::round_to_digits(FixedReal::parse("12345.6"), 2).to_string(), "12000");
  EXPECT_EQ(machin::round_to_digits(FixedReal::parse("9.96"), 2, RoundingMode::half_away).to_string(), "10.0");
}

TEST(RoundToDigits, Idempotent) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const FixedReal x(random_bigint(rng, 3), rng() % 40);
    const std::size_t d = 1 + rng() % 30;
    for (auto mode : {RoundingMode::truncate, RoundingMode::half_away}) {
      const FixedReal once = machin::round_to_digits(x, d, mode);
      EXPECT_EQ(machin::round_to_digits(once, d, mode), once);
    }
  }
}

TEST(TruncatePlaces, ReplaysDecimalCuts) {
  EXPECT_EQ(machin::truncate_places(FixedReal::parse("-0.0144358958054451040550"), 6).to_string(), "-0.014435");
  EXPECT_EQ(machin::truncate_places(FixedReal::parse("3.14159265358979"), 5).to_string(), "3.14159");
}

TEST(Accuracy, DecimalAccuracyAndAgreement) {
  EXPECT_EQ(machin::decimal_accuracy(FixedReal::parse("0.00000093")), 6U);
  EXPECT_EQ(machin::decimal_accuracy(FixedReal::parse("0.001")), 2U);
  EXPECT_EQ(machin::decimal_accuracy(FixedReal(BigInt(0), 30)), 30U);
  EXPECT_EQ(machin::agreeing_places(FixedReal::parse("3.14159358"), FixedReal::parse("3.14159265")), 5);
  EXPECT_EQ(machin::agreeing_places(FixedReal::parse("2.9"), FixedReal::parse("3.1")), -1);
  EXPECT_EQ(machin::agreeing_places(FixedReal::parse("-0.01"), FixedReal::parse("0.01")), -1);
}
