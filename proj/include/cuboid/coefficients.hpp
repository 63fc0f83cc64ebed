#pragma once

// The nine coefficient formulas E10..E12 evaluated exactly at a rational
// point (b, c). Each polynomial factor is kept as the literal term list of
// the published formula and combined with the same negative powers of
//   A = bc - 1 - b,  B = bc - c - 2b,  Q = b^2c^4 - ... + c^2,
//   M = b^2c^2 + 2b^2 - 3b^2c + c - bc^2 + 2b.
//
// E21 comes in three forms:
//   printed    N21 / ((Q - 4c^3) A^2 B^2), exactly as published
//   common     N21 / (Q A^2 B^2), the denominator shared by E30, E03, E12
//   corrected  (N21 - 4c^3) / (Q A^2 B^2), the -4c^3 term moved to the
//              numerator; this is the only form consistent with the
//              face-diagonal relations of the cubic roots.

#include "cuboid/cubic.hpp"
#include "cuboid/params.hpp"
#include "cuboid/singularity.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cuboid {

enum class E21Form { Printed, Common, Corrected };

inline std::string_view to_string(E21Form f) {
  switch (f) {
    case E21Form::Printed: return "printed";
    case E21Form::Common: return "common";
    case E21Form::Corrected: return "corrected";
  }
  return "?";
}

inline std::optional<E21Form> parse_e21_form(std::string_view s) {
  if (s == "printed") return E21Form::Printed;
  if (s == "common") return E21Form::Common;
  if (s == "corrected") return E21Form::Corrected;
  return std::nullopt;
}

struct SingularPointError : std::domain_error {
  SingularPointError(const Params& p, SingularityClass cls)
      : std::domain_error("singular point " + p.str() + ": " + cls.str()), point(p), flags(cls) {}
  Params point;
  SingularityClass flags;
};

// Zero of the printed E21 denominator Q - 4c^3 at a point the classifier
// considers regular. Only the printed form has these poles.
struct E21PoleError : std::domain_error {
  explicit E21PoleError(const Params& p)
      : std::domain_error("printed E21 denominator vanishes at " + p.str()), point(p) {}
  Params point;
};

struct CoefficientSet {
  Rational e10, e20, e30;  // edge cubic
  Rational e01, e02, e03;  // diagonal cubic
  Rational e21, e11, e12;  // auxiliary right-hand sides
  E21Form e21_form = E21Form::Printed;

  friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;
};

namespace formula {

struct Term {
  int coef;
  unsigned b;
  unsigned c;
};

using Poly = std::span<const Term>;

// b^2c^2 + 2b^2 - 3b^2c + c - bc^2 + 2b
inline constexpr Term kMerged[] = {{1, 2, 2}, {2, 2, 0}, {-3, 2, 1}, {1, 0, 1}, {-1, 1, 2}, {2, 1, 0}};
// b^2c^4 - 6b^2c^3 + 13b^2c^2 - 12b^2c + 4b^2 + c^2
inline constexpr Term kQuartic[] = {{1, 2, 4}, {-6, 2, 3}, {13, 2, 2}, {-12, 2, 1}, {4, 2, 0}, {1, 0, 2}};
// bc - 1 - b
inline constexpr Term kFirst[] = {{1, 1, 1}, {-1, 0, 0}, {-1, 1, 0}};
// bc - c - 2b
inline constexpr Term kSecond[] = {{1, 1, 1}, {-1, 0, 1}, {-2, 1, 0}};
// -c + bc - 2b  (the same factor, in the order printed for E30 and E03)
inline constexpr Term kSecondAlt[] = {{-1, 0, 1}, {1, 1, 1}, {-2, 1, 0}};

// E11 = -b (c^2 + 2 - 4c) / M
inline constexpr Term kE11[] = {{1, 0, 2}, {2, 0, 0}, {-4, 0, 1}};
// E10 = -(b^2c^2 + 2b^2 - 3b^2c - c) / M
inline constexpr Term kE10[] = {{1, 2, 2}, {2, 2, 0}, {-3, 2, 1}, {-1, 0, 1}};
// E01 = -b (c^2 + 2 - 2c) / M
inline constexpr Term kE01[] = {{1, 0, 2}, {2, 0, 0}, {-2, 0, 1}};

// E20 = b/2 (bc^2 - 2c - 2b)(2bc^2 - c^2 - 6bc + 2 + 4b) A^-2 B^-2
inline constexpr Term kE20a[] = {{1, 1, 2}, {-2, 0, 1}, {-2, 1, 0}};
inline constexpr Term kE20b[] = {{2, 1, 2}, {-1, 0, 2}, {-6, 1, 1}, {2, 0, 0}, {4, 1, 0}};

// E02 = 1/2 (...) A^-2 B^-2
inline constexpr Term kE02[] = {
    {28, 2, 2}, {-16, 2, 1}, {-2, 0, 2}, {-4, 2, 0},  {-1, 2, 4},  {4, 3, 4},  {-12, 3, 3}, {4, 1, 3},  {24, 3, 1},
    {-8, 1, 1}, {-2, 4, 4},  {12, 4, 3}, {-26, 4, 2}, {-8, 2, 3}, {24, 4, 1}, {-16, 3, 0}, {-8, 4, 0}};

// E30 = c b^2 (1 - c)(c - 2)(bc^2 - 4bc + 2 + 4b)(2bc^2 - c^2 - 4bc + 2b) Q^-1 A^-2 (-c + bc - 2b)^-2
inline constexpr Term kOneMinusC[] = {{1, 0, 0}, {-1, 0, 1}};
inline constexpr Term kCMinusTwo[] = {{1, 0, 1}, {-2, 0, 0}};
inline constexpr Term kE30a[] = {{1, 1, 2}, {-4, 1, 1}, {2, 0, 0}, {4, 1, 0}};
inline constexpr Term kE30b[] = {{2, 1, 2}, {-1, 0, 2}, {-4, 1, 1}, {2, 1, 0}};

// E03 = b/2 (...)(...) Q^-1 A^-2 (-c + bc - 2b)^-2
inline constexpr Term kE03a[] = {{1, 2, 4}, {-5, 2, 3}, {10, 2, 2}, {-10, 2, 1},
                                 {4, 2, 0}, {2, 1, 1},  {2, 0, 2},  {-1, 1, 3}};
inline constexpr Term kE03b[] = {{2, 2, 4},  {-12, 2, 3}, {26, 2, 2}, {-24, 2, 1}, {8, 2, 0},  {-1, 1, 4},
                                 {3, 1, 3},  {-6, 1, 1},  {4, 1, 0},  {1, 0, 3},   {-2, 0, 2}, {2, 0, 1}};

// E21 = b/2 N21 D21^-1 A^-2 B^-2
inline constexpr Term kE21[] = {
    {5, 1, 6},     {-2, 2, 6},   {52, 2, 5},   {-16, 1, 5},  {-2, 2, 7},  {2, 4, 8},    {-26, 4, 7},  {-426, 4, 5},
    {-61, 3, 6},   {100, 3, 5},  {14, 3, 7},   {-1, 3, 8},   {-20, 1, 2}, {-8, 2, 2},   {-16, 2, 1},  {-128, 2, 4},
    {-200, 3, 3},  {244, 3, 2},  {32, 1, 3},   {768, 4, 4},  {-852, 4, 3}, {568, 4, 2}, {104, 2, 3},  {-208, 4, 1},
    {8, 0, 4},     {16, 3, 0},   {-112, 3, 1}, {142, 4, 6},  {32, 4, 0},  {-2, 0, 5}};
// b^2c^4 - 6b^2c^3 + 13b^2c^2 - 12b^2c - 4c^3 + 4b^2 + c^2
inline constexpr Term kE21PrintedDen[] = {{1, 2, 4},  {-6, 2, 3}, {13, 2, 2}, {-12, 2, 1},
                                          {-4, 0, 3}, {4, 2, 0},  {1, 0, 2}};
inline constexpr Term kE21Correction[] = {{-4, 0, 3}};

// E12 = N12 Q^-1 A^-2 B^-2
inline constexpr Term kE12[] = {
    {16, 6, 0},   {32, 5, 0},   {-6, 2, 5},   {2, 1, 5},    {-62, 5, 6}, {62, 6, 6},   {16, 4, 0},  {-180, 6, 5},
    {-1, 3, 7},   {18, 5, 7},   {-12, 6, 7},  {-2, 5, 8},   {1, 6, 8},   {248, 5, 2},  {248, 6, 2}, {-96, 6, 1},
    {321, 6, 4},  {-180, 5, 3}, {-144, 5, 1}, {-360, 6, 3}, {1, 4, 8},   {8, 4, 6},    {-6, 4, 7},  {18, 4, 5},
    {7, 3, 6},    {90, 5, 5},   {-14, 3, 5},  {17, 2, 4},   {32, 4, 2},  {28, 3, 3},   {-28, 3, 2}, {-4, 1, 3},
    {8, 3, 1},    {-57, 4, 4},  {36, 4, 3},   {-12, 2, 3},  {-48, 4, 1}, {-1, 0, 4}};

}  // namespace formula

// Evaluates individual coefficients on demand at one regular point, sharing
// the powers of b, c and the inverted denominator factors.
class CoefficientEvaluator {
 public:
  explicit CoefficientEvaluator(const Params& p) : p_(p) {
    SingularityClass cls = classify(p);
    if (!cls.empty()) throw SingularPointError(p, cls);
    bpow_[0] = cpow_[0] = Rational(1);
    for (std::size_t i = 1; i < bpow_.size(); ++i) bpow_[i] = bpow_[i - 1] * p.b;
    for (std::size_t i = 1; i < cpow_.size(); ++i) cpow_[i] = cpow_[i - 1] * p.c;
    Rational a = eval(formula::kFirst);
    Rational b = eval(formula::kSecond);
    inv_m_ = eval(formula::kMerged).inverse();
    inv_a2b2_ = (a * a * b * b).inverse();
    inv_q_ = eval(formula::kQuartic).inverse();
  }

  const Params& params() const { return p_; }

  Rational e11() const { return -(p_.b * eval(formula::kE11)) * inv_m_; }
  Rational e10() const { return -eval(formula::kE10) * inv_m_; }
  Rational e01() const { return -(p_.b * eval(formula::kE01)) * inv_m_; }

  Rational e20() const {
    return half() * p_.b * eval(formula::kE20a) * eval(formula::kE20b) * inv_a2b2_;
  }
  Rational e02() const { return half() * eval(formula::kE02) * inv_a2b2_; }

  Rational e30() const {
    Rational a = eval(formula::kFirst);
    Rational b = eval(formula::kSecondAlt);
    return p_.c * bpow_[2] * eval(formula::kOneMinusC) * eval(formula::kCMinusTwo) * eval(formula::kE30a) *
           eval(formula::kE30b) * inv_q_ * (a * a).inverse() * (b * b).inverse();
  }
  Rational e03() const {
    Rational a = eval(formula::kFirst);
    Rational b = eval(formula::kSecondAlt);
    return half() * p_.b * eval(formula::kE03a) * eval(formula::kE03b) * inv_q_ * (a * a).inverse() *
           (b * b).inverse();
  }

  Rational e21(E21Form form) const {
    Rational numerator = eval(formula::kE21);
    Rational inv_den = inv_q_;
    switch (form) {
      case E21Form::Printed: {
        Rational den = eval(formula::kE21PrintedDen);
        if (den.is_zero()) throw E21PoleError(p_);
        inv_den = den.inverse();
        break;
      }
      case E21Form::Common:
        break;
      case E21Form::Corrected:
        numerator += eval(formula::kE21Correction);
        break;
    }
    return half() * p_.b * numerator * inv_den * inv_a2b2_;
  }

  Rational e12() const { return eval(formula::kE12) * inv_q_ * inv_a2b2_; }

  CoefficientSet all(E21Form form) const {
    return {e10(), e20(), e30(), e01(), e02(), e03(), e21(form), e11(), e12(), form};
  }

 private:
  static Rational half() { return Rational(1, 2); }

  Rational eval(formula::Poly poly) const {
    Rational acc(0);
    for (const auto& t : poly) acc += Rational(static_cast<long>(t.coef)) * bpow_[t.b] * cpow_[t.c];
    return acc;
  }

  Params p_;
  std::array<Rational, 7> bpow_;
  std::array<Rational, 9> cpow_;
  Rational inv_m_, inv_a2b2_, inv_q_;
};

// Throws SingularPointError when classify(p) is nonempty and E21PoleError
// when the printed E21 denominator vanishes.
inline CoefficientSet eval_coefficients(const Params& p, E21Form form = E21Form::Printed) {
  return CoefficientEvaluator(p).all(form);
}

// x^3 - E10 x^2 + E20 x - E30
inline CubicPoly edge_cubic(const CoefficientSet& cs) { return {-cs.e10, cs.e20, -cs.e30}; }

// d^3 - E01 d^2 + E02 d - E03
inline CubicPoly diagonal_cubic(const CoefficientSet& cs) { return {-cs.e01, cs.e02, -cs.e03}; }

}  // namespace cuboid
