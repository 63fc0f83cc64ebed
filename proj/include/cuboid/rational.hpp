#pragma once

// Exact rational arithmetic on top of GMP.
//
// Rational is always kept in lowest terms with a positive denominator, so
// structural equality is numeric equality and the textual form is unique.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace cuboid {

using Integer = mpz_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT
  Rational(const Integer& v) : q_(v) {}  // NOLINT

  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.get_num() = num;
    q_.get_den() = den;
    q_.canonicalize();
  }

  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  explicit Rational(mpq_class v) : q_(std::move(v)) { q_.canonicalize(); }

  const Integer& num() const { return q_.get_num(); }
  const Integer& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-q_), Trusted{}); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  Rational inverse() const { return Rational(1) / *this; }

  // Always "p/q", including integers ("3/1") and zero ("0/1").
  std::string str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  // max(|p|, q) of the reduced form.
  Integer height() const {
    Integer a = abs(q_.get_num());
    return a > q_.get_den() ? a : Integer(q_.get_den());
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  struct Trusted {};
  Rational(mpq_class v, Trusted) : q_(std::move(v)) {}

  mpq_class q_;
};

inline Rational pow(Rational base, unsigned exp) {
  Rational result(1);
  while (exp) {
    if (exp & 1u) result *= base;
    exp >>= 1u;
    if (exp) base *= base;
  }
  return result;
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

namespace detail {

inline bool parse_integer(std::string_view s, Integer& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') return false;
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

}  // namespace detail

struct ParsedRational {
  Rational value;
  bool was_reduced = false;  // input was not already in lowest terms
};

// Accepts "p/q" or "p" with optional sign on p. Decimal notation is refused
// so that floats never leak into exact computations.
inline ParsedRational parse_rational_detailed(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational");
  if (s.find_first_of(".eE") != std::string_view::npos)
    throw ParseError("'" + std::string(text) +
                     "' looks like a decimal; write rationals exactly as p/q (e.g. 1/2 instead of 0.5)");
  Integer num, den(1);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!detail::parse_integer(s, num)) throw ParseError("malformed rational '" + std::string(text) + "'");
    return {Rational(num), false};
  }
  std::string_view den_text = s.substr(slash + 1);
  if (!detail::parse_integer(s.substr(0, slash), num) || den_text.empty() ||
      den_text[0] == '-' || den_text[0] == '+' || !detail::parse_integer(den_text, den))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  return {r, r.den() != den};
}

inline Rational parse_rational(std::string_view text) { return parse_rational_detailed(text).value; }

// Nonnegative rational square root if r is a square in Q.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  if (mpz_perfect_square_p(r.num().get_mpz_t()) == 0 || mpz_perfect_square_p(r.den().get_mpz_t()) == 0)
    return std::nullopt;
  Integer n = sqrt(r.num());
  Integer d = sqrt(r.den());
  return Rational(n, d);
}

}  // namespace cuboid

template <>
struct std::hash<cuboid::Rational> {
  std::size_t operator()(const cuboid::Rational& r) const noexcept {
    std::size_t h1 = mpz_get_ui(r.num().get_mpz_t());
    std::size_t h2 = mpz_get_ui(r.den().get_mpz_t());
    return h1 * 0x9e3779b97f4a7c15ULL ^ (h2 + static_cast<std::size_t>(r.sign() + 1));
  }
};
