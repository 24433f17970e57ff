#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace lsv {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline Int int_pow(Int base, unsigned exp) {
  Int r = 1;
  while (exp) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact at every step: r is C(n-k+i, i)
  }
  return r;
}

inline std::string rat_string(const Rat& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

// Deterministic primality by trial division; fine for the lab's
// p < 10^7 scale.
inline bool is_prime(i64 p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (i64 d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// The convention "let p = x be a prime" means a prime between x and
// 2x; we pick the least prime >= x (Bertrand keeps it below 2x).
inline i64 least_prime_at_least(i64 x) {
  i64 p = x < 2 ? 2 : x;
  while (!is_prime(p)) ++p;
  return p;
}

}  // namespace lsv
