#pragma once

// Graded verification of a parameter point against the cubic equations,
// the auxiliary equations and the cuboid definition.
//
//   level 0  singular point, or edge cubic discriminant not a square
//   level 1  edge cubic discriminant is a rational square
//   level 2  edge cubic splits over Q
//   level 3  edge roots all positive
//   level 4  diagonal cubic splits with positive roots
//   level 5  some diagonal pairing satisfies all three auxiliary equations
//   level 6  face and space diagonal relations hold: a perfect cuboid

#include "cuboid/coefficients.hpp"
#include "cuboid/cubic.hpp"
#include "cuboid/singularity.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cuboid {

using Triple = std::array<Rational, 3>;

// Slot i of the auxiliary equations takes d[perm[i]].
using Permutation = std::array<std::uint8_t, 3>;

inline constexpr std::array<Permutation, 6> kPermutations = {
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

inline constexpr Permutation kIdentity = {0, 1, 2};

inline std::string permutation_str(const Permutation& p) {
  return std::to_string(p[0] + 1) + std::to_string(p[1] + 1) + std::to_string(p[2] + 1);
}

inline Triple apply(const Permutation& perm, const Triple& d) { return {d[perm[0]], d[perm[1]], d[perm[2]]}; }

// LHS - RHS of
//   x1 x2 d3 + x2 x3 d1 + x3 x1 d2 = E21
//   x1 d2 + d1 x2 + x2 d3 + d2 x3 + x3 d1 + d3 x1 = E11
//   x1 d2 d3 + x2 d3 d1 + x3 d1 d2 = E12
// with d permuted by perm.
inline Triple auxiliary_residuals(const Triple& x, const Triple& d, const Permutation& perm,
                                  const Rational& e21, const Rational& e11, const Rational& e12) {
  Triple p = apply(perm, d);
  Rational l1 = x[0] * x[1] * p[2] + x[1] * x[2] * p[0] + x[2] * x[0] * p[1];
  Rational l2 = x[0] * p[1] + p[0] * x[1] + x[1] * p[2] + p[1] * x[2] + x[2] * p[0] + p[2] * x[0];
  Rational l3 = x[0] * p[1] * p[2] + x[1] * p[2] * p[0] + x[2] * p[0] * p[1];
  return {l1 - e21, l2 - e11, l3 - e12};
}

inline Triple auxiliary_residuals(const Triple& x, const Triple& d, const Permutation& perm,
                                  const CoefficientSet& cs) {
  return auxiliary_residuals(x, d, perm, cs.e21, cs.e11, cs.e12);
}

inline bool all_zero(const Triple& t) { return t[0].is_zero() && t[1].is_zero() && t[2].is_zero(); }

// First permutation in lexicographic order that zeroes all three residuals.
inline std::optional<Permutation> check_pairings(const Triple& x, const Triple& d, const Rational& e21,
                                                 const Rational& e11, const Rational& e12) {
  for (const auto& perm : kPermutations)
    if (all_zero(auxiliary_residuals(x, d, perm, e21, e11, e12))) return perm;
  return std::nullopt;
}

inline std::optional<Permutation> check_pairings(const Triple& x, const Triple& d, const CoefficientSet& cs) {
  return check_pairings(x, d, cs.e21, cs.e11, cs.e12);
}

struct PythagoreanResult {
  bool holds = false;
  unsigned shift = 0;          // face convention that matched (or 0)
  Triple face_residuals;       // d_i^2 - (x_j^2 + x_k^2)
  Rational space_residual;     // x1^2 + x2^2 + x3^2 - 1
};

// Tries the three cyclic conventions "slot i is the diagonal of the face
// missing edge i + shift" and accepts any of them.
inline PythagoreanResult pythagorean_check(const Triple& x, const Triple& d, const Permutation& perm) {
  Triple p = apply(perm, d);
  Triple sq = {x[0] * x[0], x[1] * x[1], x[2] * x[2]};
  Rational total = sq[0] + sq[1] + sq[2];
  PythagoreanResult best;
  best.space_residual = total - Rational(1);
  for (unsigned shift = 0; shift < 3; ++shift) {
    Triple res;
    for (unsigned i = 0; i < 3; ++i) res[i] = p[i] * p[i] - (total - sq[(i + shift) % 3]);
    if (shift == 0) best.face_residuals = res;
    if (all_zero(res)) {
      best.shift = shift;
      best.face_residuals = res;
      best.holds = best.space_residual.is_zero();
      return best;
    }
  }
  return best;
}

struct Verdict {
  int level = 0;
  std::string reason;
  std::vector<Rational> residuals;
  SingularityClass singular;
  std::optional<RootTriple> edges;
  std::optional<RootTriple> diagonals;
  std::optional<Permutation> pairing;
  E21Form e21_form = E21Form::Printed;

  bool perfect_cuboid() const { return level == 6; }
};

// Coefficient source backed by precomputed values.
struct FixedCoefficients {
  CoefficientSet cs;
  Rational e10() const { return cs.e10; }
  Rational e20() const { return cs.e20; }
  Rational e30() const { return cs.e30; }
  Rational e01() const { return cs.e01; }
  Rational e02() const { return cs.e02; }
  Rational e03() const { return cs.e03; }
  Rational e21(E21Form) const { return cs.e21; }
  Rational e11() const { return cs.e11; }
  Rational e12() const { return cs.e12; }
};

// Runs levels 1..6 pulling coefficients lazily from src, so the common
// early exits never evaluate the large diagonal and auxiliary formulas.
template <typename Source>
Verdict grade_with(const Source& src, E21Form form) {
  Verdict v;
  v.e21_form = form;

  CubicPoly edge{-src.e10(), src.e20(), -src.e30()};
  Rational disc = discriminant(edge);
  if (!is_rational_square(disc)) {
    v.reason = "edge-disc-nonsquare";
    v.residuals = {disc};
    return v;
  }
  v.level = 1;

  v.edges = rational_roots(edge);
  if (!v.edges) {
    v.reason = "edge-no-split";
    return v;
  }
  v.level = 2;

  if (!v.edges->all_positive()) {
    v.reason = "edge-nonpositive";
    v.residuals.assign(v.edges->roots().begin(), v.edges->roots().end());
    return v;
  }
  v.level = 3;

  CubicPoly diag{-src.e01(), src.e02(), -src.e03()};
  v.diagonals = rational_roots(diag);
  if (!v.diagonals) {
    v.reason = "diagonal-no-split";
    v.residuals = {discriminant(diag)};
    return v;
  }
  if (!v.diagonals->all_positive()) {
    v.reason = "diagonal-nonpositive";
    v.residuals.assign(v.diagonals->roots().begin(), v.diagonals->roots().end());
    return v;
  }
  v.level = 4;

  Rational e21;
  try {
    e21 = src.e21(form);
  } catch (const E21PoleError&) {
    v.reason = "e21-pole";
    return v;
  }
  Rational e11 = src.e11();
  Rational e12 = src.e12();
  const Triple& x = v.edges->roots();
  const Triple& d = v.diagonals->roots();
  v.pairing = check_pairings(x, d, e21, e11, e12);
  if (!v.pairing) {
    v.reason = "no-pairing";
    Triple r = auxiliary_residuals(x, d, kIdentity, e21, e11, e12);
    v.residuals.assign(r.begin(), r.end());
    return v;
  }
  v.level = 5;

  PythagoreanResult py = pythagorean_check(x, d, *v.pairing);
  if (!py.holds) {
    v.reason = "not-pythagorean";
    v.residuals.assign(py.face_residuals.begin(), py.face_residuals.end());
    v.residuals.push_back(py.space_residual);
    return v;
  }
  v.level = 6;
  v.reason = "perfect-cuboid";
  return v;
}

inline Verdict grade(const Params& p, E21Form form = E21Form::Printed) {
  SingularityClass cls = classify(p);
  if (!cls.empty()) {
    Verdict v;
    v.e21_form = form;
    v.singular = cls;
    v.reason = "singular";
    return v;
  }
  return grade_with(CoefficientEvaluator(p), form);
}

inline Verdict grade(const CoefficientSet& cs) { return grade_with(FixedCoefficients{cs}, cs.e21_form); }

}  // namespace cuboid
