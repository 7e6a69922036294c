#pragma once
#include <cstdint>
#include <vector>

#include "cartier/bigint.hpp"

namespace cartier {

// Packed exponent vector: 16 slots of 16 bits.  Slot sums stay far below
// 2^16 in all uses (asserted at construction), so monomial products are
// four parallel 64-bit adds.
struct Monomial {
  uint64_t w[4] = {0, 0, 0, 0};

  unsigned exp(int i) const {
    return static_cast<unsigned>((w[i >> 2] >> ((i & 3) * 16)) & 0xffffu);
  }
  void set_exp(int i, unsigned e) {
    int q = i >> 2, s = (i & 3) * 16;
    w[q] = (w[q] & ~(0xffffull << s)) | (static_cast<uint64_t>(e) << s);
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < 4; ++i) r.w[i] = w[i] + o.w[i];
    return r;
  }
  bool operator==(const Monomial& o) const {
    return w[0] == o.w[0] && w[1] == o.w[1] && w[2] == o.w[2] && w[3] == o.w[3];
  }
  bool operator<(const Monomial& o) const {
    for (int i = 3; i >= 0; --i)
      if (w[i] != o.w[i]) return w[i] < o.w[i];
    return false;
  }
  uint64_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < 4; ++i) {
      uint64_t x = w[i] + h;
      x ^= x >> 30;
      x *= 0xbf58476d1ce4e5b9ull;
      x ^= x >> 27;
      x *= 0x94d049bb133111ebull;
      x ^= x >> 31;
      h = x;
    }
    return h;
  }
};

// Sparse polynomial over Z in up to 16 variables; terms sorted by monomial
// for deterministic iteration, coefficients nonzero.
struct Poly {
  int nvars = 0;
  std::vector<std::pair<Monomial, Int>> terms;

  static Poly zero(int nvars) { return Poly{nvars, {}}; }
  static Poly constant(int nvars, const Int& c);
  static Poly var(int nvars, int i, unsigned e = 1);

  bool is_zero() const { return terms.empty(); }
  size_t size() const { return terms.size(); }
  void normalize();  // sort + combine + drop zeros
  bool operator==(const Poly& o) const { return nvars == o.nvars && terms == o.terms; }
  std::string str() const;  // for diagnostics, vars printed as t0..t15
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Int& s);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_sqr(const Poly& a);  // a * a at half the pair count
// square-first powering: x^e = sqr(x^(e/2)) * x^(e&1)
Poly poly_pow(const Poly& a, unsigned long e);
// a / d with every coefficient exactly divisible; throws NonIntegral otherwise.
Poly poly_div_exact(const Poly& a, const Int& d);

// Fast path for 8-variable polynomials split into blocks x = vars 0..3
// (packed word 0) and y = vars 4..7 (word 1) that are invariant under
// swapping the blocks: products accumulate only block-canonical monomials
// (word0 >= word1) and the mirror half is restored afterwards.  Results are
// full polynomials; correctness requires block-symmetric inputs.
Poly poly_mul_sym(const Poly& a, const Poly& b);
Poly poly_sqr_sym(const Poly& a);
Poly poly_pow_sym(const Poly& a, unsigned long e);

// Evaluate with values in any commutative ring T supporting the callbacks.
template <class T, class Add, class Mul, class FromInt>
T poly_eval(const Poly& a, const std::vector<T>& vals, Add add, Mul mul, FromInt from_int) {
  // per-variable power tables
  std::vector<std::vector<T>> pows(vals.size());
  for (size_t v = 0; v < vals.size(); ++v) pows[v].push_back(from_int(Int(1)));
  T acc = from_int(Int(0));
  for (const auto& [m, c] : a.terms) {
    T t = from_int(c);
    for (int v = 0; v < a.nvars; ++v) {
      unsigned e = m.exp(v);
      if (!e) continue;
      auto& tab = pows[static_cast<size_t>(v)];
      while (tab.size() <= e) tab.push_back(mul(tab.back(), vals[static_cast<size_t>(v)]));
      t = mul(t, tab[e]);
    }
    acc = add(acc, t);
  }
  return acc;
}

}  // namespace cartier
