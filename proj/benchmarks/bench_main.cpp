#include <benchmark/benchmark.h>

#include "cartier/derham_witt.hpp"
#include "cartier/dieudonne.hpp"
#include "cartier/int_matrix.hpp"
#include "cartier/witt.hpp"

using namespace cartier;

static IntMatrix random_matrix(long r, long c, unsigned seed) {
  IntMatrix m(r, c);
  unsigned long s = seed;
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j) {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      m.at(i, j) = static_cast<long>((s >> 33) % 41) - 20;
    }
  return m;
}

static void BM_snf(benchmark::State& state) {
  long n = state.range(0);
  IntMatrix m = random_matrix(n, n, 7);
  for (auto _ : state) {
    auto r = smith_normal_form(m);
    benchmark::DoNotOptimize(r.rank);
  }
}
BENCHMARK(BM_snf)->Arg(6)->Arg(12)->Arg(20);

static void BM_witt_mul(benchmark::State& state) {
  long n = state.range(0);
  std::vector<BasePoly> ca, cb;
  for (long i = 0; i < n; ++i) {
    ca.push_back(BasePoly::from_int(Int(i + 1)));
    cb.push_back(BasePoly::from_int(Int(2 * i + 1)));
  }
  auto a = witt_from_components(2, static_cast<int>(n), BaseRing::fp(2), ca);
  auto b = witt_from_components(2, static_cast<int>(n), BaseRing::fp(2), cb);
  for (auto _ : state) {
    auto r = witt_mul(a, b);
    benchmark::DoNotOptimize(r.comp.size());
  }
}
BENCHMARK(BM_witt_mul)->Arg(3)->Arg(4)->Arg(5);

static void BM_drw_mul(benchmark::State& state) {
  long m = state.range(0);
  DRWElement a = drw_zero(2, m, 0), b = drw_zero(2, m, 1);
  for (long s = 0; s < m; ++s) {
    a = drw_add(a, drw_term(2, m, 0, s, 2 * s + 1, 3));
    b = drw_add(b, drw_term(2, m, 1, s, 2 * s + 3, 5));
  }
  for (auto _ : state) {
    auto r = drw_mul(a, b);
    benchmark::DoNotOptimize(r.terms.size());
  }
}
BENCHMARK(BM_drw_mul)->Arg(2)->Arg(3)->Arg(4);

static void BM_universal_deg1_order(benchmark::State& state) {
  long m = state.range(0);
  for (auto _ : state) {
    Int o = universal_deg1_order(2, m, 7, 0);
    benchmark::DoNotOptimize(o);
  }
}
BENCHMARK(BM_universal_deg1_order)->Arg(2)->Arg(3)->Arg(4);

static void BM_hom_dieudonne(benchmark::State& state) {
  long k = state.range(0);
  auto ss = supersingular_dieudonne(2, k);
  for (auto _ : state) {
    auto h = hom_dieudonne(ss, ss, k);
    benchmark::DoNotOptimize(h.basis.size());
  }
}
BENCHMARK(BM_hom_dieudonne)->Arg(3)->Arg(6)->Arg(9);

static void BM_hom_cartier_witt(benchmark::State& state) {
  long k = state.range(0);
  auto c = to_cartier(etale_rank1(2, k));
  for (auto _ : state) {
    auto h = hom_cartier(c, c, k);
    benchmark::DoNotOptimize(h.basis.size());
  }
}
BENCHMARK(BM_hom_cartier_witt)->Arg(3)->Arg(6);

BENCHMARK_MAIN();
