#include <gtest/gtest.h>

#include <random>

#include "machin/gaussian.hpp"

using machin::BigInt;
using machin::BigRational;
using machin::GaussianRational;
using machin::gdiv;
using machin::gmul;

namespace {

BigRational q(long n, long d = 1) { return BigRational(BigInt(n), BigInt(d)); }

GaussianRational power_by_repetition(const GaussianRational& a, unsigned e) {
  GaussianRational r(q(1));
  for (unsigned j = 0; j < e; ++j) r = r * a;
  return r;
}

GaussianRational random_gaussian(std::mt19937_64& rng) {
  auto part = [&rng] {
    return q(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
  };
  return {part(), part()};
}

}  // namespace

TEST(Gaussian, Multiplication) {
  EXPECT_EQ(gmul({q(2), q(1)}, {q(2), q(-1)}), GaussianRational(q(5)));
  EXPECT_EQ(gmul(GaussianRational::i(), GaussianRational::i()), GaussianRational(q(-1)));
}

TEST(Gaussian, UnitConjugate) {
  const GaussianRational u(q(3, 5), q(4, 5));
  EXPECT_EQ(u.norm(), q(1));
  EXPECT_EQ(gmul(u, u.conj()), GaussianRational(q(1)));
}

TEST(Gaussian, PowerOfUnitRatio) {
  const GaussianRational a(q(12, 13), q(5, 13));
  const GaussianRational expected(q(-239, 28561), q(28560, 28561));
  EXPECT_EQ(machin::gpow(a, 4), expected);
  EXPECT_EQ(power_by_repetition(a, 4), expected);
}

TEST(Gaussian, TrivialPowers) {
  const GaussianRational a(q(7, 3), q(-2, 9));
  EXPECT_EQ(machin::gpow(a, 0), GaussianRational(q(1)));
  EXPECT_EQ(machin::gpow(a, 1), a);
}

TEST(Gaussian, Division) {
  EXPECT_EQ(gdiv(GaussianRational(q(2)), {q(-7, 25), q(-1, 25)}), GaussianRational(q(-7), q(1)));
  const GaussianRational a(q(5, 7), q(-3, 11));
  EXPECT_EQ(gdiv(a, a), GaussianRational(q(1)));
  EXPECT_EQ(gdiv({q(2), q(1)}, {q(2), q(-1)}), GaussianRational(q(3, 5), q(4, 5)));
  EXPECT_THROW(gdiv(a, GaussianRational()), machin::DivisionByZero);
}

TEST(Gaussian, NormIsMultiplicativeUnderPowers) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const GaussianRational a = random_gaussian(rng);
    for (unsigned e = 0; e <= 64; e += 7) {
      const BigRational n = a.norm();
      EXPECT_EQ(machin::gpow(a, e).norm(), BigRational(machin::pow(n.num(), e), machin::pow(n.den(), e)));
    }
  }
}

TEST(Gaussian, PowerMatchesRepeatedMultiplication) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const GaussianRational a = random_gaussian(rng);
    for (unsigned e = 0; e <= 12; ++e) EXPECT_EQ(machin::gpow(a, e), power_by_repetition(a, e));
  }
}

TEST(Gaussian, ExponentsAdd) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const GaussianRational a = random_gaussian(rng);
    const unsigned m = static_cast<unsigned>(rng() % 20);
    const unsigned n = static_cast<unsigned>(rng() % 20);
    EXPECT_EQ(machin::gpow(a, m + n), gmul(machin::gpow(a, m), machin::gpow(a, n)));
  }
}

TEST(Gaussian, UnitRatioStaysOnCircle) {
  for (long b : {2L, 5L, 40L, 239L}) {
    const GaussianRational z = gdiv({q(b), q(1)}, {q(b), q(-1)});
    EXPECT_EQ(z.norm(), q(1));
    for (std::uint64_t e : {2ULL, 8ULL, 32ULL, 256ULL}) EXPECT_EQ(machin::gpow(z, e).norm(), q(1)) << b << "^" << e;
  }
}
