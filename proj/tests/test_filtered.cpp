#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cartier/errors.hpp"
#include "cartier/filtered.hpp"

using namespace cartier;

namespace {

ChainComplex z_in(long deg) {
  return concentrated(CoeffRing::z(), deg, FGAbelianGroup::free_group(1));
}

// bounded model of the nonnegative v-line: v^j in degree -2j, 0 <= j <= top
ChainComplex v_poly(long top) {
  ChainComplex c{CoeffRing::z(), {}, {}};
  for (long j = 0; j <= top; ++j) c.groups[-2 * j] = FGAbelianGroup::free_group(1);
  return c;
}

struct Rng {
  unsigned long long s;
  explicit Rng(unsigned long long seed) : s(seed) {}
  long next(long m) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<long>((s >> 33) % static_cast<unsigned long long>(m));
  }
};

// random bounded complex over Z with a valid differential (d in two adjacent
// degrees built from a single matrix and a zero one, so d*d = 0)
ChainComplex random_complex(Rng& rng) {
  ChainComplex c{CoeffRing::z(), {}, {}};
  long lo = rng.next(3) - 2, width = 1 + rng.next(3);
  for (long n = lo; n < lo + width; ++n)
    c.groups[n] = FGAbelianGroup::free_group(1 + rng.next(2));
  long dn = lo + 1 + rng.next(width > 1 ? width - 1 : 1);
  if (c.groups.count(dn) && c.groups.count(dn - 1)) {
    IntMatrix m = IntMatrix::zero(c.group(dn - 1).num_generators(),
                                  c.group(dn).num_generators());
    for (long i = 0; i < m.rows; ++i)
      for (long j = 0; j < m.cols; ++j) m.at(i, j) = rng.next(5) - 2;
    // keep only one differential so d*d = 0 holds trivially
    if (!m.is_zero() && !c.groups.count(dn + 1) ) c.diff[dn] = m;
  }
  c.validate();
  return c;
}

FilteredComplex random_filtered(Rng& rng) {
  switch (rng.next(3)) {
    case 0: return insert_weight(rng.next(3) - 1, random_complex(rng));
    case 1: return double_speed_whitehead(random_complex(rng));
    default: {
      GradedAbelianGroup g;
      long w = rng.next(3) - 1;
      g.set(w, FGAbelianGroup::cyclic(2 + rng.next(4)));
      g.set(w + 1, FGAbelianGroup::free_group(1));
      return discrete_filtered(CoeffRing::z(), g);
    }
  }
}

}  // namespace

TEST_CASE("weight insertion has one graded piece and the right underlying") {
  auto x = insert_weight(0, z_in(0));
  x.validate();
  CHECK(homology(graded_piece(x, 0), 0).describe() == "Z");
  CHECK(is_acyclic(graded_piece(x, -1)));
  CHECK(is_acyclic(graded_piece(x, 1)));
  CHECK(homology(underlying(x), 0).describe() == "Z");
  // the constant tail never dies, so the filtration does not converge
  CHECK(!is_complete(x));
}

TEST_CASE("discrete filtered objects are complete and lie in the heart") {
  GradedAbelianGroup m;
  m.set(0, FGAbelianGroup::cyclic(4));
  m.set(2, FGAbelianGroup::free_group(2));
  auto x = discrete_filtered(CoeffRing::z(), m);
  x.validate();
  CHECK(is_complete(x));
  auto h = heart_pi(x);
  CHECK(h.at(0).describe() == "Z/4");
  CHECK(h.at(2).describe() == "Z^2");
  CHECK(h.at(1).is_zero());
  CHECK(homology(graded_piece(x, 2), 2).describe() == "Z^2");
}

TEST_CASE("double speed whitehead filtration of the v-line") {
  // tau_{>=2*} applied to Z[v] truncated at v^4
  auto d = double_speed_whitehead(v_poly(4));
  d.validate();
  auto p = polynomial_v_filtered(CoeffRing::z(), 0, 4, d.w_min, 0);
  p.validate();
  CHECK(d.w_max == 0);
  auto td = homotopy_table(d, -8, 0);
  auto tp = homotopy_table(p, -8, 0);
  CHECK(td.same_invariants(tp));
  // graded pieces: a single Z in degree 2i
  for (long i = -3; i <= 0; ++i) {
    auto g = homology_all(graded_piece(d, i));
    REQUIRE(g.size() == 1);
    CHECK(g.begin()->first == 2 * i);
    CHECK(g.begin()->second.describe() == "Z");
  }
}

TEST_CASE("heart detection accepts the circle model and rejects skew objects") {
  // Z in (degree 0, weight 0) and (degree 1, weight 1) with zero transition
  FilteredComplex c{CoeffRing::z(), 0, 1, BelowPolicy::Zero, {}, {}};
  c.level[0] = z_in(0);
  c.level[1] = z_in(1);
  c.validate();
  auto h = heart_pi(c);
  CHECK(h.at(0).describe() == "Z");
  CHECK(h.at(1).describe() == "Z");
  CHECK_THROWS_AS(heart_pi(insert_weight(0, z_in(0))), NotInHeart);
  FilteredComplex skew{CoeffRing::z(), 0, 0, BelowPolicy::Zero, {}, {}};
  skew.level[0] = z_in(3);
  CHECK_THROWS_AS(heart_pi(skew), NotInHeart);
}

TEST_CASE("day tensor unit") {
  auto unit = insert_weight(0, z_in(0));
  auto x = polynomial_v_filtered(CoeffRing::z(), 0, 3, -3, 0);
  auto t = day_tensor(unit, x);
  t.validate();
  CHECK(t.w_min == x.w_min);
  CHECK(t.w_max == x.w_max);
  CHECK(homotopy_table(t, -6, 0).same_invariants(homotopy_table(x, -6, 0)));
}

TEST_CASE("day tensor of the v-line with a discrete Z/2") {
  auto x = polynomial_v_filtered(CoeffRing::z(), 0, 3, -3, 0);
  auto y = insert_weight(0, concentrated(CoeffRing::z(), 0, FGAbelianGroup::cyclic(2)));
  auto t = day_tensor(x, y);
  t.validate();
  for (long i = -2; i <= 0; ++i) {
    auto g = homology_all(graded_piece(t, i));
    REQUIRE(g.size() == 1);
    CHECK(g.begin()->first == 2 * i);
    CHECK(g.begin()->second.describe() == "Z/2");
  }
}

TEST_CASE("day tensor adds weights of discrete classes") {
  GradedAbelianGroup m;
  m.set(1, FGAbelianGroup::free_group(1));
  auto x = discrete_filtered(CoeffRing::z(), m);
  auto t = day_tensor(x, x);
  t.validate();
  CHECK(t.w_max == 2);
  CHECK(homology(t.level_at(2), 2).describe() == "Z");
  CHECK(is_acyclic(t.level_at(3)));
  CHECK(homology(graded_piece(t, 2), 2).describe() == "Z");
}

TEST_CASE("day tensor is associative up to homotopy on random objects") {
  Rng rng(0x5eed01);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = random_filtered(rng);
    auto y = random_filtered(rng);
    auto z = random_filtered(rng);
    auto a = day_tensor(day_tensor(x, y), z);
    auto b = day_tensor(x, day_tensor(y, z));
    CHECK(a.w_min == b.w_min);
    CHECK(a.w_max == b.w_max);
    CHECK(homotopy_table(a, -8, 8).same_invariants(homotopy_table(b, -8, 8)));
  }
}

TEST_CASE("day tensor window guard") {
  auto x = polynomial_v_filtered(CoeffRing::z(), 0, 3, -3, 0);
  CHECK_THROWS_AS(day_tensor(x, x, 2), WindowOverflow);
}

TEST_CASE("postnikov truncation fixes the weight insertion of Z") {
  auto x = insert_weight(0, z_in(0));
  auto t = truncate_postnikov(x, 0);
  t.validate();
  CHECK(homotopy_table(t, -2, 2).same_invariants(homotopy_table(x, -2, 2)));
  // and it is idempotent at the level of homotopy tables
  auto tt = truncate_postnikov(t, 0);
  CHECK(homotopy_table(tt, -2, 2).same_invariants(homotopy_table(t, -2, 2)));
}

TEST_CASE("postnikov truncation of the double speed filtration") {
  auto d = double_speed_whitehead(v_poly(3));
  auto t = truncate_postnikov(d, 0);
  t.validate();
  // levels tau_{>=i} tau_{>=2i} C = tau_{>=i} C for i <= 0 keep even cells >= i
  for (long i = t.w_min; i <= 0; ++i) {
    auto h = homology_all(t.level_at(i));
    for (const auto& [n, g] : h) CHECK(n >= i);
  }
}

TEST_CASE("neutral truncation kills a complex below the cut") {
  auto x = insert_weight(0, z_in(-1));
  auto t = truncate_neutral(x, 0);
  t.validate();
  for (long i = t.w_min - 1; i <= t.w_max + 1; ++i) CHECK(is_acyclic(t.level_at(i)));
  auto t2 = truncate_neutral(t, 0);
  CHECK(homotopy_table(t2, -3, 3).same_invariants(homotopy_table(t, -3, 3)));
}

TEST_CASE("filtered map validation rejects non-commuting squares") {
  auto x = polynomial_v_filtered(CoeffRing::z(), 0, 2, -2, 0);
  auto f = filtered_scalar(x, 2);
  f.validate();
  // break one square
  f.comp[-1] = scalar_map(x.level_at(-1), 3);
  CHECK_THROWS_AS(f.validate(), RelationViolation);
}

TEST_CASE("fiber of multiplication by n on the weight insertion of Z") {
  auto x = insert_weight(0, z_in(0));
  auto f = filtered_scalar(x, 5);
  auto fib = fiber_filtered(f);
  fib.validate();
  CHECK(homology(fib.level_at(0), -1).describe() == "Z/5");
  CHECK(homology(fib.level_at(0), 0).is_zero());
  auto cof = cofiber_filtered(f);
  cof.validate();
  CHECK(homology(cof.level_at(0), 0).describe() == "Z/5");
}

TEST_CASE("pullback along identities recovers the object") {
  auto x = polynomial_v_filtered(CoeffRing::z(), 0, 2, -2, 0);
  auto p = pullback(filtered_identity(x), filtered_identity(x));
  p.validate();
  for (long i = x.w_min; i <= x.w_max; ++i) {
    auto hx = homology_all(x.level_at(i));
    auto hp = homology_all(p.level_at(i));
    CHECK(hx.size() == hp.size());
    for (const auto& [n, g] : hx) CHECK(g.same_invariants(homology(p.level_at(i), n)));
  }
}

TEST_CASE("cofiber satisfies the euler characteristic identity over Q") {
  auto q = CoeffRing::q();
  auto x = insert_weight(0, concentrated(q, 1, FGAbelianGroup::free_group(2)));
  auto y = insert_weight(0, concentrated(q, 0, FGAbelianGroup::free_group(3)));
  FilteredMap f{x, y, {}};
  f.comp[0] = chain_zero_map(x.level_at(0), y.level_at(0));
  f.validate();
  auto c = cofiber_filtered(f);
  c.validate();
  auto chi = [](const ChainComplex& cx) {
    long s = 0;
    for (const auto& [n, g] : homology_all(cx)) s += (n % 2 == 0 ? 1 : -1) * g.free_rank;
    return s;
  };
  for (long i = c.w_min; i <= c.w_max; ++i)
    CHECK(chi(c.level_at(i)) == chi(y.level_at(i)) - chi(x.level_at(i)));
}

TEST_CASE("tate construction for the integers") {
  long M = 4;
  auto e1 = polynomial_v_filtered(CoeffRing::z(), 0, M, -M, 0);
  auto e2 = polynomial_v_filtered(CoeffRing::z(), -M, M, -M, M);
  FilteredMap incl{e1, e2, {}};
  for (long i = -M; i <= M; ++i) {
    ChainMap c{e1.level_at(i), e2.level_at(i), {}};
    for (const auto& [n, g] : c.dom.groups) c.comp[n] = IntMatrix::identity(1);
    incl.comp[i] = std::move(c);
  }
  incl.validate();
  auto t = cofiber_filtered(incl);
  t.validate();
  // the quotient by the nonnegative part is Z in each positive even degree
  for (long i : {0L, -2L}) {
    auto h = homology_all(t.level_at(i));
    CHECK(static_cast<long>(h.size()) == M);
    for (long d = 2; d <= 2 * M; d += 2) CHECK(h.at(d).describe() == "Z");
  }
}

TEST_CASE("rational cyclotomic pullback table for the sphere") {
  long N = 3;
  auto t = rational_tc_sphere(N);
  std::map<std::pair<long, long>, long> expected;
  expected[{0, 0}] = 1;
  expected[{-1, 0}] = 1;
  for (long l = 1; l <= N; ++l)
    for (long j = 0; j <= l; ++j) expected[{2 * l - 1, j}] = 1;
  CHECK(t.entries.size() == expected.size());
  for (const auto& [k, rank] : expected) {
    CHECK(t.at(k.first, k.second).free_rank == rank);
    CHECK(t.at(k.first, k.second).invariant_factors.empty());
  }
}

TEST_CASE("n-series fixed point tables match cyclic group cohomology") {
  long D = 8;
  for (long n : {1L, 2L, 3L, 6L}) {
    auto t = cyclic_fixed_points_via_n_series(n, D);
    // oracle: the periodic resolution of Z over Z[C_n] gives H^0 = Z,
    // H^{even} = Z/n, H^{odd} = 0, placed in nonpositive degrees
    ChainComplex oracle{CoeffRing::z(), {}, {}};
    for (long m = 0; m <= D + 1; ++m) oracle.groups[-m] = FGAbelianGroup::free_group(1);
    for (long m = 0; m <= D; ++m)
      oracle.diff[-m] = IntMatrix(1, 1, {Int(m % 2 == 1 ? n : 0)});
    oracle.validate();
    for (long m = 0; m <= D; ++m) {
      auto h = homology(oracle, -m);
      CHECK(t.at(-m, (m + 1) / 2).same_invariants(h));
    }
    // nothing outside the reported diagonal entries
    for (const auto& [k, g] : t.entries) CHECK(k.second == (1 - k.first) / 2);
  }
  auto t2 = cyclic_fixed_points_via_n_series(2, D);
  CHECK(t2.at(0, 0).describe() == "Z");
  CHECK(t2.at(-2, 1).describe() == "Z/2");
  CHECK(t2.at(-4, 2).describe() == "Z/2");
  CHECK(t2.at(-3, 2).is_zero());
}
