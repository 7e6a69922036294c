#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cartier/dieudonne.hpp"
#include "cartier/errors.hpp"
#include "doctest.h"

using namespace cartier;

namespace {

Int ipow(long b, long e) { return pow_int(Int(b), static_cast<unsigned long>(e)); }

std::vector<DieudonneModule> catalog(long p, long k) {
  return {etale_rank1(p, k), formal_rank1(p, k), supersingular_dieudonne(p, k)};
}

// random change of basis: identity + strictly-triangular noise is always
// invertible mod p; compose two of opposite shapes for a generic unit
IntMatrix random_basis_change(std::mt19937_64& rng, long p, long k, long r) {
  long pk = 1;
  for (long i = 0; i < k; ++i) pk *= p;
  std::uniform_int_distribution<long> d(0, pk - 1);
  std::uniform_int_distribution<long> u(0, p - 2);
  IntMatrix lo = IntMatrix::identity(r), hi = IntMatrix::identity(r);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) {
      if (i > j) lo.at(i, j) = d(rng);
      if (i < j) hi.at(i, j) = d(rng);
      if (i == j) hi.at(i, j) = 1 + u(rng);  // unit diagonal
    }
  return lo.mul(hi);
}

DieudonneModule random_2x2(std::mt19937_64& rng, long p, long k) {
  std::uniform_int_distribution<int> pick(0, 3);
  DieudonneModule base;
  switch (pick(rng)) {
    case 0: base = direct_sum_dieudonne(etale_rank1(p, k), etale_rank1(p, k)); break;
    case 1: base = direct_sum_dieudonne(etale_rank1(p, k), formal_rank1(p, k)); break;
    case 2: base = direct_sum_dieudonne(formal_rank1(p, k), formal_rank1(p, k)); break;
    default: base = supersingular_dieudonne(p, k); break;
  }
  return conjugate_dieudonne(base, random_basis_change(rng, p, k, 2));
}

}  // namespace

TEST_CASE("catalog modules satisfy FV = VF = p") {
  for (long p : {2L, 3L, 5L})
    for (long k : {1L, 3L, 6L})
      for (const auto& m : catalog(p, k)) CHECK(verify_dieudonne(m).ok());
  // F^2 = p example from the defining relations
  CHECK(verify_dieudonne(supersingular_dieudonne(2, 6)).ok());
  // a broken pair is reported on both sides
  DieudonneModule bad = dieudonne_module(2, 3, IntMatrix::from_rows({{1}}),
                                         IntMatrix::from_rows({{1}}));
  ModuleReport r = verify_dieudonne(bad);
  CHECK(r.violations.size() == 2);
  CHECK(r.violations[0].find("FV=p") != std::string::npos);
  CHECK(r.violations[1].find("VF=p") != std::string::npos);
}

TEST_CASE("formality is nilpotence of V mod p") {
  for (long p : {2L, 3L}) {
    CHECK(is_formal(etale_rank1(p, 4)));
    CHECK(!is_formal(formal_rank1(p, 4)));
    CHECK(is_formal(supersingular_dieudonne(p, 4)));
    CHECK(!is_formal(direct_sum_dieudonne(etale_rank1(p, 4), formal_rank1(p, 4))));
    CHECK(is_formal(direct_sum_dieudonne(etale_rank1(p, 4), supersingular_dieudonne(p, 4))));
  }
}

TEST_CASE("newton slopes of the catalog") {
  for (long p : {2L, 3L, 5L}) {
    SlopeData e = newton_slopes(etale_rank1(p, 4));
    REQUIRE(e.slopes.size() == 1);
    CHECK(e.slopes[0] == Slope{Rat(0), 1});
    SlopeData f = newton_slopes(formal_rank1(p, 4));
    REQUIRE(f.slopes.size() == 1);
    CHECK(f.slopes[0] == Slope{Rat(1), 1});
    SlopeData s = newton_slopes(supersingular_dieudonne(p, 4));
    REQUIRE(s.slopes.size() == 1);
    CHECK(s.slopes[0] == Slope{Rat(1, 2), 2});
    SlopeData mixed = newton_slopes(
        direct_sum_dieudonne(etale_rank1(p, 4), formal_rank1(p, 4)));
    REQUIRE(mixed.slopes.size() == 2);
    CHECK(mixed.slopes[0] == Slope{Rat(0), 1});
    CHECK(mixed.slopes[1] == Slope{Rat(1), 1});
  }
  // slopes are ascending and multiplicities fill the rank
  DieudonneModule big = direct_sum_dieudonne(
      supersingular_dieudonne(3, 6),
      direct_sum_dieudonne(etale_rank1(3, 6), formal_rank1(3, 6)));
  SlopeData sd = newton_slopes(big);
  long total = 0;
  for (std::size_t i = 0; i < sd.slopes.size(); ++i) {
    total += sd.slopes[i].mult;
    if (i > 0) CHECK(sd.slopes[i - 1].slope < sd.slopes[i].slope);
  }
  CHECK(total == big.r);
}

TEST_CASE("newton slopes are conjugation invariant") {
  std::mt19937_64 rng(42);
  for (long p : {2L, 3L}) {
    for (int it = 0; it < 10; ++it) {
      DieudonneModule base = it % 2 == 0
                                 ? supersingular_dieudonne(p, 6)
                                 : direct_sum_dieudonne(etale_rank1(p, 6), formal_rank1(p, 6));
      DieudonneModule conj =
          conjugate_dieudonne(base, random_basis_change(rng, p, 6, base.r));
      CHECK(verify_dieudonne(conj).ok());
      SlopeData a = newton_slopes(base), b = newton_slopes(conj);
      CHECK(a.slopes == b.slopes);
    }
  }
}

TEST_CASE("newton slopes demand a certifying truncation") {
  // charpoly t^2 - p has constant term vanishing mod p^1
  CHECK_THROWS_AS(newton_slopes(supersingular_dieudonne(2, 1)), TruncationTooSmall);
  CHECK_NOTHROW(newton_slopes(supersingular_dieudonne(2, 2)));
}

TEST_CASE("hom groups between catalog modules") {
  for (long p : {2L, 3L}) {
    long k = 6;
    Int pk = ipow(p, k);
    // no maps between the unit-F and unit-V modules
    CHECK(hom_dieudonne(etale_rank1(p, k), formal_rank1(p, k), k).group.is_zero());
    CHECK(hom_dieudonne(formal_rank1(p, k), etale_rank1(p, k), k).group.is_zero());
    // scalars
    DieudonneHom end_e = hom_dieudonne(etale_rank1(p, k), etale_rank1(p, k), k);
    CHECK(end_e.group.same_invariants(FGAbelianGroup::cyclic(pk)));
    // End of the supersingular module is Z/p^k[F]: the commutant of a matrix
    // with irreducible charpoly t^2 - p is generated by 1 and F, so the rank
    // is 2 (the quaternion maximal order of rank 4 only appears after base
    // change to the algebraic closure, outside this model)
    DieudonneModule ss = supersingular_dieudonne(p, k);
    DieudonneHom end_s = hom_dieudonne(ss, ss, k);
    REQUIRE(end_s.group.invariant_factors.size() == 2);
    for (const auto& f : end_s.group.invariant_factors) CHECK(f == pk);
    CHECK(end_s.group.free_rank == 0);
    // exhaustive check at k = 2: every commuting matrix is a + bF
    {
      DieudonneModule s2 = supersingular_dieudonne(p, 2);
      Int p2 = ipow(p, 2);
      long pl = static_cast<long>(p * p);
      long count = 0;
      for (long a = 0; a < pl; ++a)
        for (long b = 0; b < pl; ++b)
          for (long c = 0; c < pl; ++c)
            for (long d = 0; d < pl; ++d) {
              IntMatrix phi = IntMatrix::from_rows({{a, b}, {c, d}});
              if (phi.mul(s2.F_mat).sub(s2.F_mat.mul(phi)).mod_reduced(p2).is_zero() &&
                  phi.mul(s2.V_mat).sub(s2.V_mat.mul(phi)).mod_reduced(p2).is_zero())
                ++count;
            }
      CHECK(Int(count) == hom_dieudonne(s2, s2, 2).group.order());
    }
    // basis elements genuinely commute with F and V mod p^k
    for (const auto& phi : end_s.basis) {
      CHECK(phi.mul(ss.F_mat).sub(ss.F_mat.mul(phi)).mod_reduced(pk).is_zero());
      CHECK(phi.mul(ss.V_mat).sub(ss.V_mat.mul(phi)).mod_reduced(pk).is_zero());
    }
    // cross-homs with the supersingular module vanish (distinct isoclinic slopes)
    CHECK(hom_dieudonne(etale_rank1(p, k), ss, k).group.is_zero());
    CHECK(hom_dieudonne(ss, formal_rank1(p, k), k).group.is_zero());
  }
}

TEST_CASE("to_cartier embeds as a weight-0 Cartier complex") {
  for (long p : {2L, 3L}) {
    for (const auto& m : catalog(p, 6)) {
      EtaCartierComplex c = to_cartier(m);
      CHECK(verify_cartier(c).ok());
      CHECK(c.mod.part_at(0).num_generators() == m.r);
      CHECK(c.d_at(0).is_zero());
    }
    // additivity: direct sums map to direct sums
    DieudonneModule a = etale_rank1(p, 6), b = supersingular_dieudonne(p, 6);
    EtaCartierComplex sum = to_cartier(direct_sum_dieudonne(a, b));
    CHECK(sum.mod.part_at(0).same_invariants(FGAbelianGroup::direct_sum(
        to_cartier(a).mod.part_at(0), to_cartier(b).mod.part_at(0))));
  }
}

TEST_CASE("formality matches derived V-completeness of the embedding") {
  std::mt19937_64 rng(7);
  for (long p : {2L, 3L}) {
    long k = 6;
    for (const auto& m : catalog(p, k))
      CHECK(is_formal(m) == is_derived_v_complete(to_cartier(m), k));
    for (int it = 0; it < 25; ++it) {
      DieudonneModule m = random_2x2(rng, p, k);
      CAPTURE(p); CAPTURE(m.F_mat.str()); CAPTURE(m.V_mat.str());
      CHECK(verify_dieudonne(m).ok());
      CHECK(is_formal(m) == is_derived_v_complete(to_cartier(m), k));
    }
  }
}

TEST_CASE("bridge faithfulness on all ordered catalog pairs") {
  for (long p : {2L, 3L}) {
    auto cat = catalog(p, 6);
    for (const auto& m : cat)
      for (const auto& n : cat) {
        CAPTURE(p); CAPTURE(m.F_mat.str()); CAPTURE(n.F_mat.str());
        CHECK(bridge_faithfulness_check(m, n, 6));
      }
  }
}

TEST_CASE("end invariants separate the catalog") {
  auto invs = [](const DieudonneModule& m) {
    return hom_dieudonne(m, m, 6).group.invariant_factors;
  };
  auto cat = catalog(2, 6);
  CHECK(invs(cat[0]) == invs(cat[1]));  // both scalar rings Z/p^6
  CHECK(invs(cat[0]) != invs(cat[2]));
  // but the cross-homs distinguish etale from formal
  CHECK(hom_dieudonne(cat[0], cat[0], 6).group.invariant_factors.size() == 1);
  CHECK(hom_dieudonne(cat[2], cat[2], 6).group.invariant_factors.size() == 2);
  CHECK(hom_dieudonne(cat[0], cat[1], 6).group.is_zero());
}

TEST_CASE("truncation reductions are compatible") {
  DieudonneModule m = supersingular_dieudonne(3, 6);
  DieudonneModule m3 = reduce_dieudonne(m, 3);
  CHECK(verify_dieudonne(m3).ok());
  CHECK(m3.F_mat == m.F_mat.mod_reduced(ipow(3, 3)));
  CHECK(reduce_dieudonne(m3, 2).F_mat == reduce_dieudonne(m, 2).F_mat);
  CHECK_THROWS_AS(reduce_dieudonne(m3, 6), TruncationUnderflow);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(dieudonne_module(6, 2, IntMatrix::identity(1), IntMatrix::identity(1)),
                  NonPrime);
  CHECK_THROWS_AS(dieudonne_module(2, 0, IntMatrix::identity(1), IntMatrix::identity(1)),
                  TruncationUnderflow);
  CHECK_THROWS_AS(dieudonne_module(2, 2, IntMatrix::identity(2), IntMatrix::identity(1)),
                  MismatchedTruncation);
  CHECK_THROWS_AS(hom_dieudonne(etale_rank1(2, 3), etale_rank1(2, 3), 1), NoStabilization);
  CHECK_THROWS_AS(hom_dieudonne(etale_rank1(2, 3), etale_rank1(2, 3), 4),
                  TruncationTooSmall);
  CHECK_THROWS_AS(hom_dieudonne(etale_rank1(2, 6), etale_rank1(3, 6), 4),
                  MismatchedTruncation);
}
