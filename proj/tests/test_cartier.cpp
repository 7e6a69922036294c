#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cartier/cartier.hpp"
#include "cartier/errors.hpp"

using namespace cartier;

namespace {

Int ipow(long p, long k) {
  Int r = 1;
  for (long i = 0; i < k; ++i) r *= p;
  return r;
}

// W_n(F_p) in weight 0: Z/p^n with d = 0, F = 1, V = p
EtaCartierComplex wn_fp(long p, long n) {
  EtaCartierComplex m;
  m.p = p;
  m.mod.ring = EtaRingSel::Base;
  m.mod.part[0] = FGAbelianGroup::cyclic(ipow(p, n));
  m.F[0] = IntMatrix(1, 1, {Int(1)});
  m.V[0] = IntMatrix(1, 1, {Int(p)});
  return m;
}

// free module Z -> Z with d the identity, p = 2, F = (2, 1), V = (1, 2)
EtaCartierComplex zz_d() {
  EtaCartierComplex m;
  m.p = 2;
  m.mod.part[0] = FGAbelianGroup::free_group(1);
  m.mod.part[1] = FGAbelianGroup::free_group(1);
  m.d[0] = IntMatrix(1, 1, {Int(1)});
  m.F[0] = IntMatrix(1, 1, {Int(2)});
  m.F[1] = IntMatrix(1, 1, {Int(1)});
  m.V[0] = IntMatrix(1, 1, {Int(1)});
  m.V[1] = IntMatrix(1, 1, {Int(2)});
  return m;
}

// characteristic-2 module with eta = d nonzero and F = V = 0
EtaCartierComplex eta_active() {
  EtaCartierComplex m;
  m.p = 2;
  for (long w = 0; w <= 2; ++w) m.mod.part[w] = FGAbelianGroup::cyclic(2);
  for (long w = 0; w <= 1; ++w) {
    m.mod.eta[w] = IntMatrix(1, 1, {Int(1)});
    m.d[w] = IntMatrix(1, 1, {Int(1)});
  }
  return m;
}

// Z_p-truncation with an invertible Verschiebung
EtaCartierComplex v_invertible(long p) {
  EtaCartierComplex m;
  m.p = p;
  m.mod.part[0] = FGAbelianGroup::free_group(1);
  m.F[0] = IntMatrix(1, 1, {Int(p)});
  m.V[0] = IntMatrix(1, 1, {Int(1)});
  return m;
}

bool cols_equal_mod(const IntMatrix& a, const IntMatrix& b, const FGAbelianGroup& g) {
  IntMatrix d = a.sub(b);
  for (long j = 0; j < d.cols; ++j)
    if (!g.element_is_zero(d.column(j))) return false;
  return true;
}

}  // namespace

TEST_CASE("defining relations hold on the standard examples") {
  for (long p : {2L, 3L, 5L})
    for (long n = 1; n <= 3; ++n) CHECK(verify_cartier(wn_fp(p, n)).ok());
  CHECK(verify_cartier(zz_d()).ok());
  CHECK(verify_cartier(eta_active()).ok());
}

TEST_CASE("perturbing F breaks exactly the Frobenius relations") {
  auto m = wn_fp(2, 2);
  m.F[0] = IntMatrix(1, 1, {Int(2)});
  auto rep = verify_cartier(m);
  CHECK(!rep.ok());
  for (const auto& v : rep.violations) CHECK(v.find("FV=p") != std::string::npos);
}

TEST_CASE("fixed points of a module with zero differential") {
  EtaCartierComplex m = wn_fp(3, 1);
  m.p = 3;
  m.mod.part[0] = FGAbelianGroup::free_group(1);  // Z in weight 0
  auto n = fixed_pi0(m);
  CHECK(n.parts.at(0).same_invariants(FGAbelianGroup::free_group(1)));
}

TEST_CASE("fixed points of the identity differential are generated by (2,1)") {
  auto m = zz_d();
  auto n = fixed_pi0(m);
  CHECK(n.parts.at(0).same_invariants(FGAbelianGroup::free_group(1)));
  // the solution lattice of x = 2y is spanned by (2, 1)
  IntMatrix expect = IntMatrix::col_vec({Int(2), Int(1)});
  CHECK(in_column_lattice(n.gens.at(0), expect.column(0)));
  for (long j = 0; j < n.gens.at(0).cols; ++j)
    CHECK(in_column_lattice(expect, n.gens.at(0).column(j)));
}

TEST_CASE("fixed points over a torsion module count all 2-torsion pairs") {
  EtaCartierComplex m;
  m.p = 2;
  m.mod.part[0] = FGAbelianGroup::cyclic(4);
  m.mod.part[1] = FGAbelianGroup::cyclic(4);
  for (long w : {0L, 1L}) {
    m.F[w] = IntMatrix(1, 1, {Int(1)});
    m.V[w] = IntMatrix(1, 1, {Int(2)});
  }
  REQUIRE(verify_cartier(m).ok());
  auto n = fixed_pi0(m);
  // {(x, y) in Z/4 x Z/4 : 0 = 2y} has order 4 * 2
  CHECK(n.parts.at(0).order() == 8);
}

TEST_CASE("orbits present the base change d -> p e") {
  EtaCartierComplex m = wn_fp(3, 1);
  m.mod.part[0] = FGAbelianGroup::free_group(1);
  auto o = orbit_pi0(m);
  CHECK(o.parts.at(0).same_invariants(FGAbelianGroup::free_group(1)));
  // with d = 0 the e-generator satisfies p (e m) = 0
  CHECK(o.parts.at(1).same_invariants(FGAbelianGroup::cyclic(3)));
  // free input with invertible d recovers the closed form: weight 1 stays free
  auto o2 = orbit_pi0(zz_d());
  CHECK(o2.parts.at(1).same_invariants(FGAbelianGroup::free_group(1)));
  CHECK(o2.parts.at(0).same_invariants(FGAbelianGroup::free_group(1)));
}

TEST_CASE("the norm lands on the fixed-point generator") {
  auto m = zz_d();
  auto n = fixed_pi0(m);
  auto nm = norm_pi0(m, n);
  // norm(1) = (2, 1) generates N_0
  REQUIRE(nm.count(0));
  CHECK((nm.at(0).at(0, 0) == 1 || nm.at(0).at(0, 0) == -1));
  // projections recover (p m, d m)
  CHECK(cols_equal_mod(n.proj1.at(0).mul(nm.at(0)),
                       IntMatrix(1, 1, {Int(2)}), m.mod.part_at(0)));
  CHECK(cols_equal_mod(n.proj2.at(0).mul(nm.at(0)), m.d_at(0), m.mod.part_at(1)));
}

TEST_CASE("norm in characteristic p kills the first coordinate") {
  auto m = eta_active();
  auto n = fixed_pi0(m);
  auto nm = norm_pi0(m, n);
  for (long w = 0; w <= 1; ++w) {
    CHECK(cols_equal_mod(n.proj1.at(w).mul(nm.at(w)),
                         IntMatrix::zero(1, 1), m.mod.part_at(w)));
    CHECK(cols_equal_mod(n.proj2.at(w).mul(nm.at(w)), m.d_at(w), m.mod.part_at(w + 1)));
  }
}

TEST_CASE("induced Frobenius and Verschiebung on W_n") {
  auto m = wn_fp(2, 3);
  auto n = fixed_pi0(m);
  auto fh = induced_F_hat(m, n);
  CHECK(cols_equal_mod(n.proj1.at(0).mul(fh.at(0)), m.F_at(0), m.mod.part_at(0)));
  CHECK(cols_equal_mod(n.proj2.at(0).mul(fh.at(0)), IntMatrix::zero(0, 1),
                       m.mod.part_at(1)));
  auto o = orbit_pi0(m);
  auto vh = induced_V_hat(m, o);
  // restricted along M -> orbit, V-hat is multiplication by p
  CHECK(cols_equal_mod(vh.at(0).mul(o.from_m.at(0)), IntMatrix(1, 1, {Int(2)}),
                       m.mod.part_at(0)));
}

TEST_CASE("F-hat after V-hat is the norm when eta vanishes") {
  for (auto m : {zz_d(), wn_fp(3, 2)}) {
    auto n = fixed_pi0(m);
    auto o = orbit_pi0(m);
    auto fh = induced_F_hat(m, n);
    auto vh = induced_V_hat(m, o);
    auto nm = norm_pi0(m, n);
    for (const auto& [w, mat] : nm) {
      if (!fh.count(w) || !vh.count(w) || !o.from_m.count(w)) continue;
      IntMatrix comp = fh.at(w).mul(vh.at(w)).mul(o.from_m.at(w));
      CHECK(cols_equal_mod(comp, mat, n.parts.at(w)));
    }
  }
}

TEST_CASE("with eta nonzero the composite differs from the norm by eta") {
  auto m = eta_active();
  auto n = fixed_pi0(m);
  auto o = orbit_pi0(m);
  auto fh = induced_F_hat(m, n);
  auto vh = induced_V_hat(m, o);
  auto nm = norm_pi0(m, n);
  for (long w = 0; w <= 1; ++w) {
    IntMatrix comp = fh.at(w).mul(vh.at(w)).mul(o.from_m.at(w));
    IntMatrix diff = comp.sub(nm.at(w));
    CHECK(cols_equal_mod(n.proj1.at(w).mul(diff), IntMatrix::zero(1, 1),
                         m.mod.part_at(w)));
    CHECK(cols_equal_mod(n.proj2.at(w).mul(diff), m.mod.eta_at(w),
                         m.mod.part_at(w + 1)));
  }
}

TEST_CASE("derived V-completeness dichotomy on Z_p-truncations") {
  EtaCartierComplex a = wn_fp(2, 1);
  a.mod.part[0] = FGAbelianGroup::free_group(1);  // Z, F = 1, V = 2
  CHECK(is_derived_v_complete(a, 4));
  CHECK(!is_derived_v_complete(v_invertible(2), 4));
}

TEST_CASE("v_complete yields verified complexes and is idempotent") {
  EtaCartierComplex a = wn_fp(2, 1);
  a.mod.part[0] = FGAbelianGroup::free_group(1);
  auto ca = v_complete(a, 4);
  CHECK(verify_cartier(ca).ok());
  CHECK(ca.mod.part_at(0).same_invariants(FGAbelianGroup::cyclic(16)));
  auto caa = v_complete(ca, 4);
  CHECK(caa.mod.part_at(0).same_invariants(ca.mod.part_at(0)));
  auto cb = v_complete(v_invertible(3), 4);
  CHECK(verify_cartier(cb).ok());
  CHECK(cb.mod.part_at(0).is_zero());
}

TEST_CASE("heart-level TC of the truncated Witt vectors of F_p") {
  for (long p : {2L, 3L, 5L}) {
    auto m = wn_fp(p, 8);
    // Frobenius is the identity here, so 1 - F = 0
    auto t = tc_heart(m);
    CHECK(t.h0.at(0).same_invariants(FGAbelianGroup::cyclic(ipow(p, 8))));
    CHECK(t.hm1.at(0).same_invariants(FGAbelianGroup::cyclic(ipow(p, 8))));
    // frob = 0: 1 - frob invertible
    auto t0 = tc_heart(m, {});
    CHECK(t0.h0.parts.empty());
    CHECK(t0.hm1.parts.empty());
    // frob = p: 1 - p is a unit modulo p^8
    WeightMaps fp;
    fp[0] = IntMatrix(1, 1, {Int(p)});
    auto tp = tc_heart(m, fp);
    CHECK(tp.h0.parts.empty());
    CHECK(tp.hm1.parts.empty());
  }
}

TEST_CASE("hom groups of Z_p-truncation Cartier modules") {
  EtaCartierComplex a = wn_fp(2, 1), b = v_invertible(2);
  a.mod.part[0] = FGAbelianGroup::free_group(1);
  b.mod.part[0] = FGAbelianGroup::free_group(1);
  auto end_a = hom_cartier(a, a, 4);
  CHECK(end_a.group.same_invariants(FGAbelianGroup::cyclic(16)));
  auto ab = hom_cartier(a, b, 4);
  CHECK(ab.group.is_zero());
  // every basis element is a valid Cartier map
  for (const auto& maps : end_a.basis) {
    CartierMap f{a, a, maps};
    f.validate();
  }
}

TEST_CASE("fixed points and orbits are functorial") {
  auto m = zz_d();
  CartierMap f{m, m, {}};
  f.comp[0] = IntMatrix(1, 1, {Int(3)});
  f.comp[1] = IntMatrix(1, 1, {Int(3)});
  f.validate();
  auto n = fixed_pi0(m);
  auto fm = fixed_map(f, n, n);
  auto nm = norm_pi0(m, n);
  // naturality of the norm: fixed_map . norm = norm . f
  for (const auto& [w, mat] : nm) {
    if (!fm.count(w)) continue;
    CHECK(cols_equal_mod(fm.at(w).mul(mat), mat.mul(f.comp_at(w)), n.parts.at(w)));
  }
  auto o = orbit_pi0(m);
  auto om = orbit_map(f, o, o);
  for (const auto& [w, cm] : o.from_m)
    CHECK(cols_equal_mod(om.at(w).mul(cm), cm.mul(f.comp_at(w)), o.parts.at(w)));
}

TEST_CASE("discrete construction round-trips the defining data") {
  auto m = zz_d();
  EtaCartierComplex copy;
  copy.p = m.p;
  copy.mod = m.mod;
  copy.d = m.d;
  copy.F = m.F;
  copy.V = m.V;
  CHECK(copy.d_at(0) == m.d_at(0));
  CHECK(copy.F_at(1) == m.F_at(1));
  CHECK(copy.V_at(1) == m.V_at(1));
  CHECK(verify_cartier(copy).ok());
}
