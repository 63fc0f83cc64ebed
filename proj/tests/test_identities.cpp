#include "cuboid/identities.hpp"

#include <gtest/gtest.h>

using namespace cuboid;

TEST(Identities, AllFourHoldExactly) {
  auto results = check_identities(standard_identities());
  ASSERT_EQ(results.size(), 4u);
  for (const auto& r : results) {
    EXPECT_TRUE(r.pass) << r.name << ": " << r.difference.str();
    EXPECT_TRUE(r.difference.is_zero());
  }
}

TEST(Identities, NamedPolynomialsMatchTheirTextForms) {
  EXPECT_EQ(polys::first_factor(), parse_poly("b c - 1 - b"));
  EXPECT_EQ(polys::second_factor(), parse_poly("b c - c - 2 b"));
  EXPECT_EQ(polys::merged_factor(), parse_poly("b^2 c^2 + 2 b^2 - 3 b^2 c + c - b c^2 + 2 b"));
  EXPECT_EQ(polys::quartic_factor(), parse_poly("b^2 c^4 - 6 b^2 c^3 + 13 b^2 c^2 - 12 b^2 c + 4 b^2 + c^2"));
  EXPECT_EQ(polys::printed_e21_factor(),
            parse_poly("b^2 c^4 - 6 b^2 c^3 + 13 b^2 c^2 - 12 b^2 c - 4 c^3 + 4 b^2 + c^2"));
  EXPECT_EQ(polys::reduced_common_denominator().total_degree(), 10);
}

TEST(Identities, CorruptedCoefficientFailsWithDifference) {
  auto ids = standard_identities();
  // Flip 13 b^2 c^2 to 12 b^2 c^2 on one side of the reducibility identity.
  ids[3].lhs = ids[3].lhs - IntPoly2::monomial(1, 2, 2);
  auto r = check_identity(ids[3]);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.difference, IntPoly2::monomial(-1, 2, 2));
}

TEST(Identities, ReducedDenominatorVanishesWhereUnreducedDoes) {
  for (long bn = -6; bn <= 6; ++bn)
    for (long cn = -6; cn <= 6; ++cn)
      for (long d : {1L, 2L, 3L}) {
        Rational b(bn, d), c(cn, 1);
        EXPECT_EQ(polys::unreduced_common_denominator().eval(b, c).is_zero(),
                  polys::reduced_common_denominator().eval(b, c).is_zero());
      }
}
