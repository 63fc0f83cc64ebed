#pragma once

// Classification of parameter points against the vanishing locus of the
// reduced common denominator  Q(b,c) * (bc-1-b) * (bc-c-2b).
//
//   FirstCurve    bc - 1 - b = 0,  b = 1/(c-1)  (c != 1)
//   SecondCurve   bc - c - 2b = 0, b = c/(c-2)  (c != 2)
//   ThirdVariety  Q = (c-1)^2 (c-2)^2 b^2 + c^2 = 0, whose only rational
//                 point is the origin.
//
// Over Q the two curves never meet (eliminating b gives -(c-1)^2 = 1), and
// the origin lies on the second curve, so ThirdVariety implies SecondCurve.

#include "cuboid/identities.hpp"
#include "cuboid/params.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuboid {

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class Singularity : std::uint8_t {
  FirstCurve = 1u << 0,
  SecondCurve = 1u << 1,
  ThirdVariety = 1u << 2,
};

class SingularityClass {
 public:
  constexpr SingularityClass() = default;
  constexpr SingularityClass(std::initializer_list<Singularity> flags) {
    for (auto f : flags) set(f);
  }

  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool has(Singularity f) const { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
  constexpr void set(Singularity f) { bits_ |= static_cast<std::uint8_t>(f); }
  constexpr std::uint8_t bits() const { return bits_; }

  constexpr bool contains(const SingularityClass& o) const { return (bits_ & o.bits_) == o.bits_; }

  friend constexpr bool operator==(SingularityClass, SingularityClass) = default;

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    if (has(Singularity::FirstCurve)) out.emplace_back("FirstCurve");
    if (has(Singularity::SecondCurve)) out.emplace_back("SecondCurve");
    if (has(Singularity::ThirdVariety)) out.emplace_back("ThirdVariety");
    return out;
  }

  // "FirstCurve,SecondCurve" or "none".
  std::string str() const {
    std::string out;
    for (const auto& n : names()) out += (out.empty() ? "" : ",") + n;
    return out.empty() ? "none" : out;
  }

 private:
  std::uint8_t bits_ = 0;
};

// Values of the three reduced denominator factors at a point.
struct FactorValues {
  Rational first;    // bc - 1 - b
  Rational second;   // bc - c - 2b
  Rational quartic;  // b^2c^4 - 6b^2c^3 + 13b^2c^2 - 12b^2c + 4b^2 + c^2
};

inline FactorValues factor_values(const Params& p) {
  const Rational& b = p.b;
  const Rational& c = p.c;
  Rational bc = b * c;
  Rational c1 = c - Rational(1);
  Rational c2 = c - Rational(2);
  Rational bq = b * c1 * c2;
  return {bc - Rational(1) - b, bc - c - Rational(2) * b, bq * bq + c * c};
}

enum class ClassifyMode {
  Fast,     // third variety via its closed-form rational point list
  Checked,  // additionally evaluates the quartic and cross-checks
};

inline SingularityClass classify(const Params& p, ClassifyMode mode = ClassifyMode::Fast) {
  SingularityClass out;
  Rational bc = p.b * p.c;
  if ((bc - Rational(1) - p.b).is_zero()) out.set(Singularity::FirstCurve);
  if ((bc - p.c - Rational(2) * p.b).is_zero()) out.set(Singularity::SecondCurve);
  bool origin = p.b.is_zero() && p.c.is_zero();
  if (origin) out.set(Singularity::ThirdVariety);
  if (mode == ClassifyMode::Checked) {
    bool quartic_zero = polys::quartic_factor().eval(p.b, p.c).is_zero();
    if (quartic_zero != origin)
      throw std::logic_error("third-variety closed form disagrees with quartic at " + p.str());
  }
  return out;
}

inline Rational first_curve_b(const Rational& c) {
  if (c == Rational(1)) throw PoleError("first curve b = 1/(c-1) has a pole at c = 1");
  return Rational(1) / (c - Rational(1));
}

inline Rational second_curve_b(const Rational& c) {
  if (c == Rational(2)) throw PoleError("second curve b = c/(c-2) has a pole at c = 2");
  return c / (c - Rational(2));
}

// All rational points of the third variety.
inline std::vector<Params> third_variety_points() { return {Params{Rational(0), Rational(0)}}; }

}  // namespace cuboid
