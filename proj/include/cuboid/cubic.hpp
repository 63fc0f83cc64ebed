#pragma once

// Exact rational root finding for monic cubics x^3 + c2 x^2 + c1 x + c0.

#include "cuboid/factor.hpp"
#include "cuboid/rational.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace cuboid {

struct CubicPoly {
  Rational c2;
  Rational c1;
  Rational c0;

  Rational operator()(const Rational& x) const { return ((x + c2) * x + c1) * x + c0; }

  friend bool operator==(const CubicPoly&, const CubicPoly&) = default;

  std::string str(char var = 'x') const {
    std::string v(1, var);
    return v + "^3 + (" + c2.str() + ")" + v + "^2 + (" + c1.str() + ")" + v + " + (" + c0.str() + ")";
  }
};

// Three roots counted with multiplicity, ascending.
class RootTriple {
 public:
  explicit RootTriple(std::array<Rational, 3> roots) : roots_(std::move(roots)) {
    std::sort(roots_.begin(), roots_.end());
  }

  const std::array<Rational, 3>& roots() const { return roots_; }
  const Rational& operator[](std::size_t i) const { return roots_[i]; }

  bool all_positive() const { return roots_[0].sign() > 0; }

  friend bool operator==(const RootTriple&, const RootTriple&) = default;

 private:
  std::array<Rational, 3> roots_;
};

// 18 c2 c1 c0 - 4 c2^3 c0 + c2^2 c1^2 - 4 c1^3 - 27 c0^2
inline Rational discriminant(const CubicPoly& q) {
  const Rational& a = q.c2;
  const Rational& b = q.c1;
  const Rational& c = q.c0;
  Rational a2 = a * a;
  Rational b2 = b * b;
  return Rational(18) * a * b * c - Rational(4) * a2 * a * c + a2 * b2 - Rational(4) * b2 * b -
         Rational(27) * c * c;
}

inline std::optional<Rational> is_rational_square(const Rational& r) { return rational_sqrt(r); }

struct IntegerCubic {
  Integer a3, a2, a1, a0;
};

// Scales to a primitive integer cubic with a3 > 0.
inline IntegerCubic clear_denominators(const CubicPoly& q) {
  Integer l(1);
  for (const Rational* r : {&q.c2, &q.c1, &q.c0}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->den().get_mpz_t());
  IntegerCubic ic{l, Integer(q.c2.num() * (l / q.c2.den())), Integer(q.c1.num() * (l / q.c1.den())),
                  Integer(q.c0.num() * (l / q.c0.den()))};
  Integer g = ic.a3;
  for (Integer* v : {&ic.a2, &ic.a1, &ic.a0}) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v->get_mpz_t());
  if (g != 1)
    for (Integer* v : {&ic.a3, &ic.a2, &ic.a1, &ic.a0}) mpz_divexact(v->get_mpz_t(), v->get_mpz_t(), g.get_mpz_t());
  return ic;
}

namespace detail {

// a3 p^3 + a2 p^2 q + a1 p q^2 + a0 q^3 == 0
inline bool is_root(const IntegerCubic& ic, const Integer& p, const Integer& q) {
  Integer q2 = q * q;
  Integer v = ((ic.a3 * p + ic.a2 * q) * p + ic.a1 * q2) * p + ic.a0 * q2 * q;
  return v == 0;
}

// Candidates p/q with p | a0, q | a3, gcd(p, q) = 1, by increasing height,
// positive before negative; first root wins.
inline std::optional<Rational> first_rational_root(const IntegerCubic& ic) {
  if (ic.a0 == 0) return Rational(0);
  std::vector<Integer> ps = positive_divisors(ic.a0);
  std::vector<Integer> qs = positive_divisors(ic.a3);
  struct Candidate {
    Integer height, p, q;
  };
  std::vector<Candidate> cands;
  cands.reserve(ps.size() * qs.size());
  Integer g;
  for (const auto& p : ps)
    for (const auto& q : qs) {
      mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
      if (g == 1) cands.push_back({p > q ? p : q, p, q});
    }
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.height, x.p, x.q) < std::tie(y.height, y.p, y.q);
  });
  for (const auto& cand : cands) {
    if (is_root(ic, cand.p, cand.q)) return Rational(cand.p, cand.q);
    Integer neg = -cand.p;
    if (is_root(ic, neg, cand.q)) return Rational(neg, cand.q);
  }
  return std::nullopt;
}

}  // namespace detail

// All three roots if the cubic splits completely over Q.
inline std::optional<RootTriple> rational_roots(const CubicPoly& q) {
  if (!is_rational_square(discriminant(q))) return std::nullopt;
  auto r = detail::first_rational_root(clear_denominators(q));
  if (!r) return std::nullopt;
  // x^3 + c2 x^2 + c1 x + c0 = (x - r)(x^2 + B x + C)
  Rational B = q.c2 + *r;
  Rational C = q.c1 + *r * B;
  auto s = is_rational_square(B * B - Rational(4) * C);
  if (!s) return std::nullopt;
  Rational half(1, 2);
  return RootTriple({*r, (-B - *s) * half, (-B + *s) * half});
}

}  // namespace cuboid
