#pragma once

// Bivariate polynomials in b and c with arbitrary-precision integer
// coefficients. Terms are kept in an ordered map with zero coefficients
// pruned, so the zero polynomial is the empty map and operator== is
// mathematical equality.

#include "cuboid/rational.hpp"

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cuboid {

struct DegreeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Exponent {
  unsigned b = 0;
  unsigned c = 0;
  auto operator<=>(const Exponent&) const = default;
};

class IntPoly2 {
 public:
  using TermMap = std::map<Exponent, Integer>;

  IntPoly2() = default;
  IntPoly2(long constant) { add_term({0, 0}, Integer(constant)); }  // NOLINT
  IntPoly2(const Integer& constant) { add_term({0, 0}, constant); }  // NOLINT

  static IntPoly2 b() { return monomial(1, 1, 0); }
  static IntPoly2 c() { return monomial(1, 0, 1); }
  static IntPoly2 monomial(const Integer& coef, unsigned deg_b, unsigned deg_c) {
    IntPoly2 p;
    p.add_term({deg_b, deg_c}, coef);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(unsigned deg_b, unsigned deg_c) const {
    auto it = terms_.find({deg_b, deg_c});
    return it == terms_.end() ? Integer(0) : it->second;
  }

  // -1 for the zero polynomial.
  int degree_in_b() const {
    int d = -1;
    for (const auto& [e, _] : terms_) d = std::max(d, static_cast<int>(e.b));
    return d;
  }
  int degree_in_c() const {
    int d = -1;
    for (const auto& [e, _] : terms_) d = std::max(d, static_cast<int>(e.c));
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, _] : terms_) d = std::max(d, static_cast<int>(e.b + e.c));
    return d;
  }

  // Coefficient of b^k viewed as a polynomial in c alone.
  IntPoly2 coefficient_in_b(unsigned k) const {
    IntPoly2 out;
    for (const auto& [e, v] : terms_)
      if (e.b == k) out.add_term({0, e.c}, v);
    return out;
  }

  IntPoly2& operator+=(const IntPoly2& o) {
    for (const auto& [e, v] : o.terms_) add_term(e, v);
    return *this;
  }
  IntPoly2& operator-=(const IntPoly2& o) {
    for (const auto& [e, v] : o.terms_) add_term(e, -v);
    return *this;
  }
  IntPoly2 operator-() const {
    IntPoly2 out;
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, -v);
    return out;
  }

  friend IntPoly2 operator+(IntPoly2 p, const IntPoly2& q) { return p += q; }
  friend IntPoly2 operator-(IntPoly2 p, const IntPoly2& q) { return p -= q; }
  friend IntPoly2 operator*(const IntPoly2& p, const IntPoly2& q) {
    IntPoly2 out;
    for (const auto& [ep, vp] : p.terms_)
      for (const auto& [eq, vq] : q.terms_)
        out.add_term({ep.b + eq.b, ep.c + eq.c}, vp * vq);
    return out;
  }
  IntPoly2& operator*=(const IntPoly2& o) { return *this = *this * o; }

  friend bool operator==(const IntPoly2&, const IntPoly2&) = default;

  // Exact value at (b, c).
  // Evaluates over a common denominator so the sum stays in integers:
  // with b = p/q, c = r/s the value is sum a_ij p^i q^(m-i) r^j s^(n-j) / (q^m s^n).
  Rational eval(const Rational& b, const Rational& c) const {
    if (terms_.empty()) return Rational(0);
    const auto m = static_cast<unsigned>(degree_in_b()), n = static_cast<unsigned>(degree_in_c());
    auto powers = [](const Integer& x, unsigned k) {
      std::vector<Integer> out{Integer(1)};
      for (unsigned i = 0; i < k; ++i) out.push_back(out.back() * x);
      return out;
    };
    auto pn = powers(b.num(), m), qd = powers(b.den(), m);
    auto rn = powers(c.num(), n), sd = powers(c.den(), n);
    Integer acc = 0;
    for (const auto& [e, v] : terms_) acc += v * pn[e.b] * qd[m - e.b] * rn[e.c] * sd[n - e.c];
    return Rational(acc, qd[m] * sd[n]);
  }

  // Readable form with descending b then c, e.g. "b^2*c^2 - 3*b^2*c + 2".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, v] = *it;
      Integer mag = abs(v);
      if (first) {
        if (v < 0) out += "-";
      } else {
        out += v < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono;
      if (e.b) mono += e.b == 1 ? "b" : "b^" + std::to_string(e.b);
      if (e.c) mono += std::string(mono.empty() ? "" : "*") + (e.c == 1 ? "c" : "c^" + std::to_string(e.c));
      if (mono.empty()) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  void add_term(Exponent e, const Integer& v) {
    if (v == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

inline IntPoly2 pow(IntPoly2 base, unsigned exp) {
  IntPoly2 result(1);
  while (exp) {
    if (exp & 1u) result *= base;
    exp >>= 1u;
    if (exp) base *= base;
  }
  return result;
}

// B^2 - 4AC for p = A(c) b^2 + B(c) b + C(c).
inline IntPoly2 discriminant_in_b(const IntPoly2& p) {
  if (p.degree_in_b() != 2)
    throw DegreeError("discriminant_in_b needs degree exactly 2 in b, got " + std::to_string(p.degree_in_b()));
  IntPoly2 a = p.coefficient_in_b(2);
  IntPoly2 b = p.coefficient_in_b(1);
  IntPoly2 c = p.coefficient_in_b(0);
  return b * b - IntPoly2(4) * a * c;
}

namespace detail {

// expr := term (('+'|'-') term)*
// term := unary ('*'? unary)*
// unary := ('-'|'+')? power
// power := atom ('^' digits)?
// atom := digits | 'b' | 'c' | '(' expr ')'
class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  IntPoly2 parse() {
    IntPoly2 p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool starts_atom(char ch) const {
    return ch == 'b' || ch == 'c' || ch == '(' || std::isdigit(static_cast<unsigned char>(ch));
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  IntPoly2 expr() {
    IntPoly2 acc = term();
    for (char ch = peek(); ch == '+' || ch == '-'; ch = peek()) {
      ++pos_;
      if (ch == '+') acc += term(); else acc -= term();
    }
    return acc;
  }
  IntPoly2 term() {
    IntPoly2 acc = unary();
    for (;;) {
      char ch = peek();
      if (ch == '*') {
        ++pos_;
        acc *= unary();
      } else if (starts_atom(ch)) {
        acc *= unary();
      } else {
        return acc;
      }
    }
  }
  IntPoly2 unary() {
    char ch = peek();
    if (ch == '-') { ++pos_; return -power(); }
    if (ch == '+') { ++pos_; return power(); }
    return power();
  }
  IntPoly2 power() {
    IntPoly2 base = atom();
    if (peek() == '^') {
      ++pos_;
      unsigned long e = std::stoul(digits());
      return cuboid::pow(base, static_cast<unsigned>(e));
    }
    return base;
  }
  IntPoly2 atom() {
    char ch = peek();
    if (ch == 'b') { ++pos_; return IntPoly2::b(); }
    if (ch == 'c') { ++pos_; return IntPoly2::c(); }
    if (ch == '(') {
      ++pos_;
      IntPoly2 inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return IntPoly2(Integer(digits()));
    fail("expected b, c, integer or '('");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses expressions like "b^2*c^2 - 3 b^2 c + (b c - 1 - b)^2".
inline IntPoly2 parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace cuboid
