#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cartier/cartier.hpp"
#include "cartier/derham_witt.hpp"
#include "cartier/errors.hpp"
#include "doctest.h"

using namespace cartier;

namespace {

Int ipow(long b, long e) { return pow_int(Int(b), static_cast<unsigned long>(e)); }

DRWElement rnd_elt(std::mt19937_64& rng, long p, long m, long q, long jmax) {
  std::uniform_int_distribution<long> nterms(1, 3), sd(0, m - 1), jd(q == 0 ? 0 : 1, jmax);
  DRWElement e = drw_zero(p, m, q);
  long n = nterms(rng);
  long mod = 1;
  for (long i = 0; i < m; ++i) mod *= p;
  std::uniform_int_distribution<long> cd(0, mod - 1);
  for (long i = 0; i < n; ++i) {
    long s = sd(rng), j = jd(rng);
    if (q == 0 && s > 0 && j == 0) j = 1;
    e = drw_add(e, drw_term(p, m, q, s, j, cd(rng)));
  }
  return e;
}

std::vector<DRWElement> all_basis_elements(long p, long m, long D) {
  std::vector<DRWElement> out;
  const DRWComplex& w = drw_complex(p, m, D);
  for (const auto& b : w.basis0) out.push_back(drw_term(p, m, 0, b.s, b.j, 1));
  for (const auto& b : w.basis1) out.push_back(drw_term(p, m, 1, b.s, b.j, 1));
  return out;
}

}  // namespace

TEST_CASE("canonical forms and normalize examples") {
  // d([x]^2) = 2 [x] d[x]
  DRWElement e = normalize(DRWExpr::d(DRWExpr::monomial(1, 2)), 3, 2, 12);
  CHECK(e == drw_term(3, 2, 1, 0, 2, 2));

  // F(d([x])) = [x]^{p-1} d[x]
  for (long p : {2L, 3L, 5L}) {
    DRWElement fdx = normalize(DRWExpr::f(DRWExpr::d(DRWExpr::monomial(1, 1))), p, 2, 12);
    CHECK(fdx == drw_term(p, 2, 1, 0, p, 1));
  }

  // V([x])^2 = p V([x]^2) = 0 in W_2 Omega^0 at p = 2 (coefficient 4 = 0 mod 4);
  // nonzero at p = 3
  DRWExpr vx2 = DRWExpr::prod({DRWExpr::v(DRWExpr::monomial(1, 1)),
                               DRWExpr::v(DRWExpr::monomial(1, 1))});
  CHECK(normalize(vx2, 2, 2, 12).is_zero());
  CHECK(normalize(vx2, 3, 2, 12) == drw_term(3, 2, 0, 1, 2, 3));

  // V(1) = p
  CHECK(drw_V(drw_monomial(2, 2, 1, 0)) == drw_monomial(2, 3, 2, 0));

  // canonicalization pulls p | j down: V(a [x]^{pj}) = p a [x]^j
  CHECK(drw_term(3, 2, 0, 1, 6, 1) == drw_monomial(3, 2, 3, 2));
  // and on the d side dV([x]^p) = d(p [x]) = p d[x]
  CHECK(drw_term(2, 3, 1, 1, 2, 1) == drw_term(2, 3, 1, 0, 1, 2));
}

TEST_CASE("operator identity suite on every basis element") {
  for (long p : {2L, 3L}) {
    for (long m = 1; m <= 3; ++m) {
      Int P = p;
      for (const DRWElement& e : all_basis_elements(p, m, 12)) {
        CAPTURE(p); CAPTURE(m); CAPTURE(drw_str(e));
        // FV = p
        CHECK(drw_F(drw_V(e)) == drw_scale(e, P));
        // RV = VR (m >= 2 so R is defined on the m-level element)
        if (m >= 2) CHECK(drw_R(drw_V(e)) == drw_V(drw_R(e)));
        if (e.q == 0) {
          // FdV = d
          CHECK(drw_F(drw_d(drw_V(e))) == drw_d(e));
          // Vd = pdV
          CHECK(drw_V(drw_d(e)) == drw_scale(drw_d(drw_V(e)), P));
          // d^2 = 0
          CHECK(drw_d(drw_d(e)).is_zero());
          if (m >= 2) {
            // dF = pFd
            CHECK(drw_d(drw_F(e)) == drw_scale(drw_F(drw_d(e)), P));
            // Rd = dR
            CHECK(drw_R(drw_d(e)) == drw_d(drw_R(e)));
          }
          if (m >= 3) CHECK(drw_R(drw_F(e)) == drw_F(drw_R(e)));
        }
      }
    }
  }
}

TEST_CASE("operator additivity and ring laws on random elements") {
  std::mt19937_64 rng(20260824);
  for (long p : {2L, 3L}) {
    for (long m = 1; m <= 3; ++m) {
      Int P = p;
      for (int it = 0; it < 45; ++it) {
        DRWElement a = rnd_elt(rng, p, m, 0, 8), b = rnd_elt(rng, p, m, 0, 8);
        DRWElement c = rnd_elt(rng, p, m, 0, 8), w1 = rnd_elt(rng, p, m, 1, 8);
        CAPTURE(p); CAPTURE(m); CAPTURE(drw_str(a)); CAPTURE(drw_str(b));
        CHECK(drw_mul(a, b) == drw_mul(b, a));
        CHECK(drw_mul(drw_mul(a, b), c) == drw_mul(a, drw_mul(b, c)));
        CHECK(drw_mul(drw_add(a, b), c) == drw_add(drw_mul(a, c), drw_mul(b, c)));
        CHECK(drw_mul(drw_add(a, b), w1) ==
              drw_add(drw_mul(a, w1), drw_mul(b, w1)));
        // Leibniz rule
        CHECK(drw_d(drw_mul(a, b)) ==
              drw_add(drw_mul(drw_d(a), b), drw_mul(a, drw_d(b))));
        // associativity across degrees
        CHECK(drw_mul(drw_mul(a, b), w1) == drw_mul(a, drw_mul(b, w1)));
        // operator additivity
        CHECK(drw_V(drw_add(a, b)) == drw_add(drw_V(a), drw_V(b)));
        CHECK(drw_V(drw_add(w1, drw_neg(w1))).is_zero());
        CHECK(drw_d(drw_add(a, b)) == drw_add(drw_d(a), drw_d(b)));
        if (m >= 2) {
          CHECK(drw_F(drw_add(a, b)) == drw_add(drw_F(a), drw_F(b)));
          CHECK(drw_F(drw_mul(a, b)) == drw_mul(drw_F(a), drw_F(b)));
          CHECK(drw_R(drw_mul(a, b)) == drw_mul(drw_R(a), drw_R(b)));
          CHECK(drw_F(drw_add(w1, w1)) == drw_scale(drw_F(w1), 2));
        }
        // projection formula V(x) y = V(x F(y))
        CHECK(drw_mul(drw_V(a), drw_V(b)) == drw_V(drw_mul(a, drw_F(drw_V(b)))));
        CHECK(drw_mul(drw_V(a), drw_V(w1)) == drw_V(drw_mul(a, drw_F(drw_V(w1)))));
        // FV = p on sums too
        CHECK(drw_F(drw_V(w1)) == drw_scale(w1, P));
      }
    }
  }
}

TEST_CASE("degree 0 arithmetic matches the ghost-route Witt oracle") {
  std::mt19937_64 rng(911);
  int pairs = 0;
  for (long p : {2L, 3L}) {
    for (long m = 1; m <= 3; ++m) {
      for (int it = 0; it < 50; ++it) {
        DRWElement a = rnd_elt(rng, p, m, 0, 6), b = rnd_elt(rng, p, m, 0, 6);
        CAPTURE(p); CAPTURE(m); CAPTURE(drw_str(a)); CAPTURE(drw_str(b));
        WittVector wa = drw_to_witt(a), wb = drw_to_witt(b);
        CHECK(witt_eq(drw_to_witt(drw_add(a, b)), oracle_add(wa, wb)));
        CHECK(witt_eq(drw_to_witt(drw_mul(a, b)), oracle_mul(wa, wb)));
        ++pairs;
      }
    }
  }
  CHECK(pairs == 300);
}

TEST_CASE("degree 1 orders match the universal quotient presentation") {
  const long D = 12;
  for (long p : {2L, 3L}) {
    for (long m = 1; m <= 3; ++m) {
      // integral degrees
      for (long u = 1; u <= D; ++u) {
        CAPTURE(p); CAPTURE(m); CAPTURE(u);
        CHECK(universal_deg1_order(p, m, u, 0) == nf_deg1_order(p, m, u, 0));
        CHECK(nf_deg1_order(p, m, u, 0) == ipow(p, m));
      }
      // fractional degrees u / p^c, p not dividing u
      for (long c = 1; c < m; ++c) {
        long bound = D;
        for (long i = 0; i < c; ++i) bound *= p;
        for (long u = 1; u <= bound; ++u) {
          if (u % p == 0) continue;
          CAPTURE(p); CAPTURE(m); CAPTURE(u); CAPTURE(c);
          CHECK(universal_deg1_order(p, m, u, c) == nf_deg1_order(p, m, u, c));
          CHECK(nf_deg1_order(p, m, u, c) == ipow(p, m - c));
        }
      }
    }
  }
  // degrees beyond the window have no symbols at all
  CHECK(universal_deg1_order(2, 2, 1, 2) == 1);
  CHECK(universal_deg1_order(2, 2, 1, 5) == 1);
}

TEST_CASE("normal-form orders tile the whole degree-1 group") {
  for (long p : {2L, 3L}) {
    for (long m = 1; m <= 3; ++m) {
      const DRWComplex& w = drw_complex(p, m, 12);
      Int direct = 1;
      for (const auto& b : w.basis1) direct *= ipow(p, m - b.s);
      Int by_degree = 1;
      for (long u = 1; u <= 12; ++u) by_degree *= nf_deg1_order(p, m, u, 0);
      for (long c = 1; c < m; ++c) {
        long bound = 12;
        for (long i = 0; i < c; ++i) bound *= p;
        for (long u = 1; u <= bound; ++u)
          if (u % p != 0) by_degree *= nf_deg1_order(p, m, u, c);
      }
      CHECK(direct == by_degree);
    }
  }
}

TEST_CASE("filtrations") {
  const DRWComplex& w = drw_complex(2, 3, 6);
  Int full0 = filtration_order(w, hodge_brutal(w, 0), 0);
  Int full1 = filtration_order(w, hodge_brutal(w, 0), 1);
  CHECK(full0 > 1);
  CHECK(full1 > 1);
  // brutal Hodge: i <= 0 everything, i = 1 keeps only degree >= 1, i = 2 nothing
  CHECK(filtration_order(w, hodge_brutal(w, 1), 0) == 1);
  CHECK(filtration_order(w, hodge_brutal(w, 1), 1) == full1);
  CHECK(filtration_order(w, hodge_brutal(w, 2), 0) == 1);
  CHECK(filtration_order(w, hodge_brutal(w, 2), 1) == 1);
  for (long i = 0; i <= 2; ++i) CHECK(filtration_closed_under_d(w, hodge_brutal(w, i)));

  // standard V-filtration: n <= 0 full, n = m zero, decreasing, d-stable
  CHECK(filtration_order(w, standard_v_filtration(w, 0), 0) == full0);
  CHECK(filtration_order(w, standard_v_filtration(w, 0), 1) == full1);
  CHECK(filtration_order(w, standard_v_filtration(w, 3), 0) == 1);
  CHECK(filtration_order(w, standard_v_filtration(w, 3), 1) == 1);
  Int prev0 = full0, prev1 = full1;
  for (long n = 1; n <= 3; ++n) {
    Int o0 = filtration_order(w, standard_v_filtration(w, n), 0);
    Int o1 = filtration_order(w, standard_v_filtration(w, n), 1);
    CHECK(o0 < prev0);
    CHECK(o1 < prev1);
    prev0 = o0; prev1 = o1;
    CHECK(filtration_closed_under_d(w, standard_v_filtration(w, n)));
  }

  // Fil^1 = V W + dV W: every V-image and dV-image of a bounded element lands
  // in the claimed subgroup (spot check via generators)
  DRWFiltration f1 = standard_v_filtration(w, 1);
  for (std::size_t i = 0; i < w.basis0.size(); ++i)
    if (w.basis0[i].s >= 1) CHECK(f1.f0[i] == 0);
  for (std::size_t i = 0; i < w.basis1.size(); ++i)
    if (w.basis1[i].s >= 1) CHECK(f1.f1[i] == 0);
}

TEST_CASE("to_cartier over the perfect base is the classical Cartier module") {
  for (long p : {2L, 3L, 5L}) {
    for (long m = 1; m <= 3; ++m) {
      EtaCartierComplex c = to_cartier(drw_complex(p, m, 0), 0);
      CHECK(verify_cartier(c).ok());
      CHECK(c.mod.part_at(0).same_invariants(FGAbelianGroup::cyclic(ipow(p, m))));
      CHECK(c.mod.part_at(1).is_zero());
      CHECK(c.F_at(0).at(0, 0) == 1);
      CHECK(c.V_at(0).at(0, 0) == p);
      CHECK(is_derived_v_complete(c, m + 2));
    }
  }
}

TEST_CASE("to_cartier twist law") {
  const DRWComplex& w = drw_complex(2, 2, 4);
  EtaCartierComplex c0 = to_cartier(w, 0), c1 = to_cartier(w, 1);
  CHECK(c1.mod.part_at(-1).same_invariants(c0.mod.part_at(0)));
  CHECK(c1.mod.part_at(0).same_invariants(c0.mod.part_at(1)));
  CHECK(c1.d_at(-1).str() == c0.d_at(0).str());
  CHECK(c1.F_at(-1).str() == c0.F_at(0).str());
  CHECK(c1.V_at(0).str() == c0.V_at(1).str());
}

TEST_CASE("to_cartier for the polynomial base: pinned relation defects") {
  // no endomorphism packaging of the bounded truncation can be fully faithful:
  // V factors through restriction (killing the top V-layer) while d is
  // injective there, so FdV = d must fail on some generator.  The packaged
  // module keeps FV = p in degree 0 and the integral chain of dF = pFd; every
  // violation is one of the three expected relation families.
  for (long p : {2L, 3L}) {
    for (long m = 1; m <= 3; ++m) {
      const DRWComplex& w = drw_complex(p, m, 4);
      EtaCartierComplex c = to_cartier(w, 0);
      ModuleReport r = verify_cartier(c);
      CHECK(!r.ok());
      for (const auto& v : r.violations) {
        CAPTURE(p); CAPTURE(m); CAPTURE(v);
        bool expected = v.find("FV=p") != std::string::npos ||
                        v.find("dF=pFd") != std::string::npos ||
                        v.find("FdV=d+eta") != std::string::npos;
        CHECK(expected);
        // degree-0 FV = p holds; failures live on the degree-1 part (weight 1)
        if (v.find("FV=p") != std::string::npos)
          CHECK(v.find("weight 1") != std::string::npos);
      }
      // the operators are still well defined and the tower is V-complete
      for (const auto& v : r.violations) CHECK(v.find("not well defined") == std::string::npos);
      CHECK(is_derived_v_complete(c, m + 2));
    }
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(drw_monomial(4, 2, 1, 0), NonPrime);
  CHECK_THROWS_AS(drw_monomial(2, 0, 1, 0), TruncationUnderflow);
  CHECK_THROWS_AS(drw_F(drw_monomial(2, 1, 1, 1)), TruncationUnderflow);
  CHECK_THROWS_AS(drw_R(drw_monomial(2, 1, 1, 1)), TruncationUnderflow);
  // V inside normalize forces the child below truncation 1
  CHECK_THROWS_AS(normalize(DRWExpr::v(DRWExpr::monomial(1, 1)), 2, 1, 12),
                  TruncationUnderflow);
  CHECK_THROWS_AS(normalize(DRWExpr::monomial(1, 13), 2, 2, 12), DegreeOverflow);
  // fractional degree bound: dV([x]^j) fits for j <= p D only
  CHECK_NOTHROW(normalize(DRWExpr::d(DRWExpr::v(DRWExpr::monomial(1, 23))), 2, 2, 12));
  CHECK_THROWS_AS(normalize(DRWExpr::d(DRWExpr::v(DRWExpr::monomial(1, 25))), 2, 2, 12),
                  DegreeOverflow);
  CHECK_THROWS_AS(drw_add(drw_monomial(2, 2, 1, 0), drw_monomial(2, 3, 1, 0)),
                  MismatchedTruncation);
  CHECK_THROWS_AS(drw_add(drw_monomial(2, 2, 1, 0), drw_monomial(3, 2, 1, 0)),
                  MismatchedTruncation);
  CHECK_THROWS_AS(drw_add(drw_monomial(2, 2, 1, 1), drw_d(drw_monomial(2, 2, 1, 1))),
                  MismatchedTruncation);
}
