#pragma once

// The polynomial factors of the coefficient denominators and the symbolic
// identities relating them. Everything here is exact integer polynomial
// algebra; an identity passes only if lhs - rhs is the zero polynomial.

#include "cuboid/bipoly.hpp"

#include <string>
#include <vector>

namespace cuboid::polys {

inline IntPoly2 term(long coef, unsigned deg_b, unsigned deg_c) {
  return IntPoly2::monomial(Integer(coef), deg_b, deg_c);
}

// bc - 1 - b
inline IntPoly2 first_factor() { return term(1, 1, 1) - term(1, 0, 0) - term(1, 1, 0); }

// bc - c - 2b
inline IntPoly2 second_factor() { return term(1, 1, 1) - term(1, 0, 1) - term(2, 1, 0); }

// b^2c^2 + 2b^2 - 3b^2c + c - bc^2 + 2b, the shared denominator of E11, E10, E01.
inline IntPoly2 merged_factor() {
  return term(1, 2, 2) + term(2, 2, 0) - term(3, 2, 1) + term(1, 0, 1) - term(1, 1, 2) + term(2, 1, 0);
}

// b^2c^4 - 6b^2c^3 + 13b^2c^2 - 12b^2c + 4b^2 + c^2
inline IntPoly2 quartic_factor() {
  return term(1, 2, 4) - term(6, 2, 3) + term(13, 2, 2) - term(12, 2, 1) + term(4, 2, 0) + term(1, 0, 2);
}

// The E21 denominator factor as literally printed: quartic - 4c^3.
inline IntPoly2 printed_e21_factor() { return quartic_factor() - term(4, 0, 3); }

// quartic * (bc-1-b)^2 * (bc-c-2b)^2 * merged
inline IntPoly2 unreduced_common_denominator() {
  return quartic_factor() * pow(first_factor(), 2) * pow(second_factor(), 2) * merged_factor();
}

// quartic * (bc-1-b)^3 * (bc-c-2b)^3
inline IntPoly2 cubed_common_denominator() {
  return quartic_factor() * pow(first_factor(), 3) * pow(second_factor(), 3);
}

// quartic * (bc-1-b) * (bc-c-2b)
inline IntPoly2 reduced_common_denominator() {
  return quartic_factor() * first_factor() * second_factor();
}

// (c-1)^2 (c-2)^2 b^2 + c^2
inline IntPoly2 quartic_sum_of_squares() {
  IntPoly2 c1 = IntPoly2::c() - IntPoly2(1);
  IntPoly2 c2 = IntPoly2::c() - IntPoly2(2);
  return c1 * c1 * c2 * c2 * term(1, 2, 0) + term(1, 0, 2);
}

// -4 (c-1)^2 (c-2)^2 c^2
inline IntPoly2 quartic_discriminant_closed_form() {
  IntPoly2 c1 = IntPoly2::c() - IntPoly2(1);
  IntPoly2 c2 = IntPoly2::c() - IntPoly2(2);
  return IntPoly2(-4) * c1 * c1 * c2 * c2 * term(1, 0, 2);
}

}  // namespace cuboid::polys

namespace cuboid {

struct Identity {
  std::string name;
  std::string description;
  IntPoly2 lhs;
  IntPoly2 rhs;
};

struct IdentityResult {
  std::string name;
  bool pass = false;
  IntPoly2 difference;  // lhs - rhs; zero on pass
};

inline IdentityResult check_identity(const Identity& id) {
  IdentityResult r;
  r.name = id.name;
  r.difference = id.lhs - id.rhs;
  r.pass = r.difference.is_zero();
  return r;
}

inline std::vector<Identity> standard_identities() {
  using namespace polys;
  return {
      {"factorization", "(bc-1-b)(bc-c-2b) = b^2c^2+2b^2-3b^2c+c-bc^2+2b",
       first_factor() * second_factor(), merged_factor()},
      {"denominator-reduction",
       "quartic*(bc-1-b)^2*(bc-c-2b)^2*merged = quartic*(bc-1-b)^3*(bc-c-2b)^3",
       unreduced_common_denominator(), cubed_common_denominator()},
      {"quartic-discriminant", "disc_b(quartic) = -4(c-1)^2(c-2)^2c^2",
       discriminant_in_b(quartic_factor()), quartic_discriminant_closed_form()},
      {"quartic-reducibility", "quartic = (c-1)^2(c-2)^2b^2 + c^2",
       quartic_factor(), quartic_sum_of_squares()},
  };
}

inline std::vector<IdentityResult> check_identities(const std::vector<Identity>& ids) {
  std::vector<IdentityResult> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(check_identity(id));
  return out;
}

}  // namespace cuboid
