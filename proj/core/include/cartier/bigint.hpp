#pragma once
#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace cartier {

// Exact arbitrary-precision arithmetic everywhere; no floating point in the library.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int pow_int(const Int& b, unsigned long e) {
  Int r = 1, base = b;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// floor-mod representative in [0, m)
inline Int mod_pos(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// p-adic valuation; returns `cap` for 0 (caller supplies a sentinel cap).
inline long val_p(Int a, const Int& p, long cap) {
  if (a == 0) return cap;
  long v = 0;
  while (a % p == 0) { a /= p; ++v; if (v >= cap) return cap; }
  return v;
}

inline std::string to_dec(const Int& a) { return a.str(); }

}  // namespace cartier
