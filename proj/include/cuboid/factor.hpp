#pragma once

// Integer factorization for rational-root candidate enumeration: trial
// division by primes below 10^6, then Brent's variant of Pollard rho on
// whatever composite cofactor remains.

#include "cuboid/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace cuboid {

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1'000'000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline bool probably_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Nontrivial factor of odd composite n.
inline Integer pollard_brent(const Integer& n) {
  for (unsigned long seed = 1;; ++seed) {
    Integer y(seed + 1), c(seed), m(128), g(1), r(1), q(1), x, ys;
    auto f = [&](const Integer& v) {
      Integer t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    while (g == 1) {
      x = y;
      for (Integer i = 0; i < r; ++i) y = f(y);
      Integer k = 0;
      while (k < r && g == 1) {
        ys = y;
        Integer lim = std::min(m, Integer(r - k));
        for (Integer i = 0; i < lim; ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

}  // namespace detail

// Prime factorization of |n|, ascending by prime. Empty for |n| <= 1.
inline std::vector<PrimePower> factorize(const Integer& value) {
  Integer n = abs(value);
  std::map<Integer, unsigned> found;
  if (n <= 1) return {};
  for (std::uint32_t p : detail::small_primes()) {
    Integer pp(static_cast<unsigned long>(p));
    if (pp * pp > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      found[pp] = e;
    }
  }
  detail::factor_into(n, found);
  std::vector<PrimePower> out;
  for (auto& [p, e] : found) out.push_back({p, e});
  return out;
}

// All positive divisors of |n| in ascending order; {} for n == 0.
inline std::vector<Integer> positive_divisors(const Integer& n) {
  if (n == 0) return {};
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : factorize(n)) {
    std::size_t base = divs.size();
    Integer pk(1);
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace cuboid
