#pragma once
#include <vector>

#include "cartier/poly.hpp"

namespace cartier {

// ---- base rings for Witt vector components ----
// Fp: prime field; Z: integers; Zx: Z[x]; Fpx: F_p[x] with a hard degree
// bound D (operations exceeding D are rejected, never silently truncated).
enum class BaseTag { Fp, Z, Zx, Fpx };

struct BaseRing {
  BaseTag tag;
  Int p = 0;          // Fp, Fpx
  long deg_bound = -1;  // Fpx only

  bool operator==(const BaseRing& o) const {
    return tag == o.tag && p == o.p && deg_bound == o.deg_bound;
  }
  static BaseRing fp(const Int& p) { return {BaseTag::Fp, p, -1}; }
  static BaseRing z() { return {BaseTag::Z, 0, -1}; }
  static BaseRing zx() { return {BaseTag::Zx, 0, -1}; }
  static BaseRing fpx(const Int& p, long d) { return {BaseTag::Fpx, p, d}; }
};

// univariate polynomial (constant for Fp/Z), coefficient of x^i at index i
struct BasePoly {
  std::vector<Int> c;

  static BasePoly from_int(const Int& v) { return BasePoly{{v}}; }
  long degree() const;
  bool is_zero() const;
  bool operator==(const BasePoly& o) const;
};

BasePoly base_reduce(const BaseRing& r, BasePoly a);  // mod p, trim, degree check
BasePoly base_add(const BaseRing& r, const BasePoly& a, const BasePoly& b);
BasePoly base_mul(const BaseRing& r, const BasePoly& a, const BasePoly& b);
BasePoly base_neg(const BaseRing& r, const BasePoly& a);
BasePoly base_pow(const BaseRing& r, const BasePoly& a, unsigned long e);
std::string base_str(const BasePoly& a);

// ---- universal structure polynomials, cached per (p, n) ----
// Layout for sum/product polys: 2n variables, x_i = var i, y_i = var n+i.
// Frobenius/negation polys use n variables x_0..x_{n-1}.
struct WittStructurePolys {
  Int p;
  int n;
  std::vector<Poly> S, P;   // sum / product, index m in [0, n)
  std::vector<Poly> N;      // negation
  std::vector<Poly> F;      // Frobenius: F_m needs x_0..x_{m+1}, m in [0, n-1)

  // Recomputes each ghost identity from scratch (fresh powers) and checks it
  // as a polynomial identity; throws NonIntegral/CartierError on failure.
  void verify_ghost_identities() const;
};

// cached accessor; computation solves the ghost equations with exact division
// and loud integrality failure
const WittStructurePolys& witt_structure_polys(const Int& p, int n);

Poly ghost_poly(const Int& p, int nvars, int first_var, int m);  // w_m

// ---- Witt vectors ----
struct WittVector {
  Int p;
  int n = 0;
  BaseRing base;
  std::vector<BasePoly> comp;
};

WittVector witt_zero(const Int& p, int n, const BaseRing& base);
WittVector witt_one(const Int& p, int n, const BaseRing& base);
WittVector witt_from_components(const Int& p, int n, const BaseRing& base,
                                std::vector<BasePoly> comp);
// the additive representation of an integer: k * 1 in W_n
WittVector witt_from_int(const Int& p, int n, const BaseRing& base, const Int& k);

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
WittVector witt_sub(const WittVector& a, const WittVector& b);
bool witt_eq(const WittVector& a, const WittVector& b);

// ghost components over p-torsion-free bases (Z, Z[x]); BaseHasPTorsion otherwise
std::vector<BasePoly> ghost(const WittVector& a);
// inverse of the ghost map where defined (throws NonIntegral if g is not a
// ghost image)
WittVector ghost_inverse(const Int& p, int n, const BaseRing& base,
                         const std::vector<BasePoly>& g);

WittVector teichmuller(const Int& p, int n, const BaseRing& base, const BasePoly& c);
WittVector frobenius_W(const WittVector& a);        // length n-1
WittVector verschiebung_W(const WittVector& a);     // length n+1
WittVector verschiebung_capped(const WittVector& a);  // V followed by restriction
WittVector restrict_W(const WittVector& a);         // length n-1

// lift a vector over Fp / Fp[x] to Z / Z[x] componentwise (representatives in
// [0, p)); identity on Z / Z[x]
WittVector witt_lift(const WittVector& a);
// reduce a vector over Z / Z[x] to Fp / Fp[x]
WittVector witt_reduce_modp(const WittVector& a, const Int& p, long deg_bound);

// Independent oracle for arithmetic over Fp / Fp[x]: lift to the p-torsion-free
// cover, compute through ghost coordinates only, reduce back.
WittVector oracle_add(const WittVector& a, const WittVector& b);
WittVector oracle_mul(const WittVector& a, const WittVector& b);

}  // namespace cartier
