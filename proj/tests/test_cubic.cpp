#include "cuboid/cubic.hpp"
#include "cuboid/factor.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace cuboid;
using Triple = std::array<Rational, 3>;

TEST(Factorize, SmallAndLarge) {
  auto f = factorize(Integer(360));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].prime, 2);
  EXPECT_EQ(f[0].exponent, 3u);
  EXPECT_EQ(f[1].prime, 3);
  EXPECT_EQ(f[2].prime, 5);
  EXPECT_TRUE(factorize(Integer(1)).empty());
  EXPECT_TRUE(factorize(Integer(0)).empty());
  EXPECT_EQ(factorize(Integer(-7)).size(), 1u);

  // Both factors exceed the trial-division bound, so rho has to split it.
  Integer p("1000003"), q("1000033");
  auto big = factorize(p * q * p);
  ASSERT_EQ(big.size(), 2u);
  EXPECT_EQ(big[0].prime, p);
  EXPECT_EQ(big[0].exponent, 2u);
  EXPECT_EQ(big[1].prime, q);

  Integer r("4611686018427387847");  // prime near 2^62
  auto semi = factorize(r * Integer("1000000007") * Integer(12));
  ASSERT_EQ(semi.size(), 4u);
  EXPECT_EQ(semi.back().prime, r);
}

TEST(Factorize, Divisors) {
  std::vector<Integer> d = positive_divisors(Integer(-12));
  std::vector<Integer> want = {1, 2, 3, 4, 6, 12};
  EXPECT_EQ(d, want);
  EXPECT_EQ(positive_divisors(Integer(1)), std::vector<Integer>{1});
  EXPECT_TRUE(positive_divisors(Integer(0)).empty());
  EXPECT_EQ(positive_divisors(Integer(720720)), oracle::naive_divisors(Integer(720720)));
}

TEST(CubicDiscriminant, Examples) {
  EXPECT_EQ(discriminant({Rational(-6), Rational(11), Rational(-6)}), Rational(4));
  EXPECT_EQ(discriminant({}), Rational(0));
  EXPECT_EQ(discriminant({Rational(0), Rational(-1), Rational(0)}), Rational(4));
}

TEST(RationalSquare, Examples) {
  EXPECT_EQ(is_rational_square(Rational(9, 4)), Rational(3, 2));
  EXPECT_FALSE(is_rational_square(Rational(2)));
  EXPECT_EQ(is_rational_square(Rational(0)), Rational(0));
}

TEST(RationalRoots, Examples) {
  auto r = rational_roots({Rational(-13, 12), Rational(3, 8), Rational(-1, 24)});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->roots(), (Triple{Rational(1, 4), Rational(1, 3), Rational(1, 2)}));
  EXPECT_FALSE(rational_roots({Rational(0), Rational(0), Rational(-2)}));
  EXPECT_FALSE(rational_roots({Rational(-1), Rational(1), Rational(-1)}));
}

TEST(RationalRoots, RepeatedAndZeroRoots) {
  auto triple = rational_roots(oracle::cubic_from_roots(Rational(1), Rational(1), Rational(1)));
  ASSERT_TRUE(triple);
  EXPECT_EQ(triple->roots(), (Triple{Rational(1), Rational(1), Rational(1)}));
  auto zero = rational_roots({});
  ASSERT_TRUE(zero);
  EXPECT_EQ(zero->roots(), (Triple{Rational(0), Rational(0), Rational(0)}));
  auto dbl = rational_roots(oracle::cubic_from_roots(Rational(-2, 3), Rational(0), Rational(-2, 3)));
  ASSERT_TRUE(dbl);
  EXPECT_EQ(dbl->roots(), (Triple{Rational(-2, 3), Rational(-2, 3), Rational(0)}));
}

TEST(RationalRoots, SquareDiscriminantButIrreducible) {
  // x^3 - 3x + 1 has discriminant 81 yet no rational root.
  CubicPoly q{Rational(0), Rational(-3), Rational(1)};
  EXPECT_EQ(discriminant(q), Rational(81));
  EXPECT_FALSE(rational_roots(q));
  EXPECT_FALSE(oracle::brute_force_roots(q));
}

// Roots of height <= 50 recovered exactly, with Vieta and substitution.
TEST(RationalRootsProperty, RecoversConstructedRoots) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 1000; ++i) {
    Triple want = {oracle::random_rational(rng, 50, 50), oracle::random_rational(rng, 50, 50),
                   oracle::random_rational(rng, 50, 50)};
    CubicPoly q = oracle::cubic_from_roots(want[0], want[1], want[2]);
    auto got = rational_roots(q);
    ASSERT_TRUE(got) << q.str();
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got->roots(), want);
    for (const auto& r : got->roots()) EXPECT_TRUE(q(r).is_zero());
    const auto& x = got->roots();
    EXPECT_EQ(x[0] + x[1] + x[2], -q.c2);
    EXPECT_EQ(x[0] * x[1] + x[1] * x[2] + x[2] * x[0], q.c1);
    EXPECT_EQ(x[0] * x[1] * x[2], -q.c0);
    EXPECT_TRUE(is_rational_square(discriminant(q)));
  }
}

TEST(RationalRootsProperty, AgreesWithBruteForceOracle) {
  std::mt19937_64 rng(4321);
  int split = 0;
  for (int i = 0; i < 1500; ++i) {
    CubicPoly q;
    if (i % 3 == 0) {
      // One factor with a rational root keeps the split rate from being ~0.
      Rational r = oracle::random_rational(rng, 9, 4);
      Rational s = oracle::random_rational(rng, 9, 4), t = oracle::random_rational(rng, 9, 4);
      q = {s - r, t - r * s, -r * t};  // (x - r)(x^2 + s x + t)
    } else {
      q = {oracle::random_rational(rng, 30, 6), oracle::random_rational(rng, 30, 6),
           oracle::random_rational(rng, 30, 6)};
    }
    auto got = rational_roots(q);
    auto want = oracle::brute_force_roots(q);
    ASSERT_EQ(got.has_value(), want.has_value()) << q.str();
    if (got) {
      EXPECT_EQ(got->roots(), *want);
      ++split;
    }
  }
  EXPECT_GT(split, 5);
}

TEST(RationalRootsProperty, Deterministic) {
  CubicPoly q = oracle::cubic_from_roots(Rational(3, 7), Rational(-5, 2), Rational(3, 7));
  auto a = rational_roots(q);
  auto b = rational_roots(q);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(*a, *b);
  EXPECT_TRUE(std::is_sorted(a->roots().begin(), a->roots().end()));
}
