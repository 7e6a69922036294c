#pragma once
#include <vector>

#include "cartier/cartier.hpp"
#include "cartier/witt.hpp"

namespace cartier {

// One normal-form term of W_mΩ^q for A = F_p[x].
//   q = 0:  V^s(a [x]^j), 0 <= s < m, (s = 0 or p does not divide j),
//           a in Z/p^{m-s} identified with W_{m-s}(F_p)
//   q = 1:  s = 0:  a [x]^{j-1} d[x], j >= 1
//           s >= 1: dV^s(a [x]^j), p does not divide j
struct DRWTerm {
  long s = 0, j = 0;
  Int a;
  bool operator==(const DRWTerm&) const = default;
};

// canonical form: terms sorted by (s, j), coefficients in [1, p^{m-s})
struct DRWElement {
  long p = 2, m = 1, q = 0;  // q = 2 encodes the vanishing top degree
  std::vector<DRWTerm> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const DRWElement&) const = default;
};

DRWElement drw_zero(long p, long m, long q);
DRWElement drw_monomial(long p, long m, const Int& c, long j);  // c [x]^j
// a single canonicalized term
DRWElement drw_term(long p, long m, long q, long s, long j, const Int& a);

DRWElement drw_add(const DRWElement& a, const DRWElement& b);
DRWElement drw_neg(const DRWElement& a);
DRWElement drw_sub(const DRWElement& a, const DRWElement& b);
DRWElement drw_scale(const DRWElement& a, const Int& c);
DRWElement drw_mul(const DRWElement& a, const DRWElement& b);

// the pro-system operators: F and R lower the truncation, V raises it
DRWElement drw_d(const DRWElement& e);
DRWElement drw_F(const DRWElement& e);
DRWElement drw_V(const DRWElement& e);
DRWElement drw_R(const DRWElement& e);

std::string drw_str(const DRWElement& e);

// expression trees for normalize; leaves are c [x]^j at the truncation forced
// by the surrounding F/V/R applications
struct DRWExpr {
  enum class Kind { Monomial, Sum, Prod, D, F, V, R };
  Kind kind = Kind::Monomial;
  Int coeff = 1;
  long j = 0;
  std::vector<DRWExpr> args;

  static DRWExpr monomial(const Int& c, long j);
  static DRWExpr sum(std::vector<DRWExpr> xs);
  static DRWExpr prod(std::vector<DRWExpr> xs);
  static DRWExpr d(DRWExpr x);
  static DRWExpr f(DRWExpr x);
  static DRWExpr v(DRWExpr x);
  static DRWExpr r(DRWExpr x);
};

// evaluates to the canonical form at truncation m; every term must satisfy
// the fractional x-degree bound j/p^s <= D
DRWElement normalize(const DRWExpr& x, long p, long m, long D);

// basis slot: generator V^s([x]^j) resp. [x]^{j-1}d[x] / dV^s([x]^j),
// a cyclic summand of order p^{m-s}
struct DRWSlot {
  long s = 0, j = 0;
  bool operator==(const DRWSlot&) const = default;
};

struct DRWComplex {
  long p = 2, m = 1, D = 0;
  std::vector<DRWSlot> basis0, basis1;  // fractional x-degree <= D, sorted
};

// memoized per (p, m, D)
const DRWComplex& drw_complex(long p, long m, long D);

// a sub-complex cut out slotwise: the subgroup p^f * (slot) per basis slot
struct DRWFiltration {
  std::vector<long> f0, f1;  // parallel to basis0 / basis1; f >= m-s means 0
};

DRWFiltration hodge_brutal(const DRWComplex& w, long i);
// Fil^n = V^n W Omega^q + d V^n W Omega^{q-1}
DRWFiltration standard_v_filtration(const DRWComplex& w, long n);
bool filtration_closed_under_d(const DRWComplex& w, const DRWFiltration& f);
Int filtration_order(const DRWComplex& w, const DRWFiltration& f, long q);

// packages the bounded truncated complex as an eta = 0 Cartier complex with
// degree q placed in weight q - twist; V is restriction-composed, faithful;
// on the degree-1 fractional part F is forced to carry an extra factor p
// (no honest endomorphism exists there; see the module tests)
EtaCartierComplex to_cartier(const DRWComplex& w, long twist);

// degree-0 element as a Witt vector over F_p[x] (componentwise), for the
// independent ghost-arithmetic oracle
WittVector drw_to_witt(const DRWElement& e);

// order of the degree-1 part in fractional x-degree u/p^c predicted by the
// normal form, and by the universal Kahler-quotient presentation via SNF
Int nf_deg1_order(long p, long m, long u, long c);
Int universal_deg1_order(long p, long m, long u, long c);

}  // namespace cartier
