#include "cartier/dieudonne.hpp"

#include <algorithm>

#include "cartier/errors.hpp"

namespace cartier {

namespace {

bool is_prime_l(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Int ppow(long p, long e) { return pow_int(Int(p), static_cast<unsigned long>(e)); }

// inverse mod p^k via the adjugate; the determinant must be a p-adic unit
IntMatrix inverse_mod(const IntMatrix& c, long p, long k) {
  Int pk = ppow(p, k);
  Int det = determinant(c);
  if (mod_pos(det, p) == 0) throw NonIntegral("matrix not invertible mod p");
  // unit inverse mod p^k by Euclid
  Int r0 = pk, r1 = mod_pos(det, pk), t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1; r1 = r2; t0 = t1; t1 = t2;
  }
  Int dinv = mod_pos(t0, pk);
  long n = c.rows;
  IntMatrix adj(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (long a = 0, ai = 0; a < n; ++a) {
        if (a == j) continue;
        for (long b = 0, bi = 0; b < n; ++b) {
          if (b == i) continue;
          minor.at(ai, bi) = c.at(a, b);
          ++bi;
        }
        ++ai;
      }
      Int cof = determinant(minor);
      adj.at(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  return adj.scaled(dinv).mod_reduced(pk);
}

// exact integer characteristic polynomial coefficients c_0..c_r of t^r + ...,
// Faddeev-LeVerrier (all divisions exact)
std::vector<Int> charpoly(const IntMatrix& f) {
  long r = f.rows;
  std::vector<Int> c(static_cast<std::size_t>(r) + 1);
  c[static_cast<std::size_t>(r)] = 1;
  IntMatrix m = IntMatrix::zero(r, r);
  Int coeff = 1;
  for (long i = 1; i <= r; ++i) {
    m = f.mul(m.add(IntMatrix::identity(r).scaled(coeff)));
    Int tr = 0;
    for (long j = 0; j < r; ++j) tr += m.at(j, j);
    coeff = -tr / i;
    c[static_cast<std::size_t>(r - i)] = coeff;
  }
  return c;
}

// invariant factors with p-valuation capped at cap
std::vector<Int> capped_invariants(const FGAbelianGroup& g, long p, long cap) {
  Int pc = ppow(p, cap);
  std::vector<Int> out;
  for (const auto& f : g.invariant_factors) {
    Int v = f == 0 ? pc : gcd_int(f, pc);
    if (v > 1) out.push_back(v);
  }
  for (long i = 0; i < g.free_rank; ++i) out.push_back(pc);
  std::sort(out.begin(), out.end());
  return out;
}

// solutions of phi F_m = F_n phi, phi V_m = V_n phi over Z/p^depth;
// phi entries in row-major order
FGAbelianGroup hom_at_depth(const DieudonneModule& m, const DieudonneModule& n,
                            long depth, std::vector<IntMatrix>* basis_out) {
  long rm = m.r, rn = n.r, nv = rn * rm;
  if (nv == 0) return FGAbelianGroup::zero();
  auto var = [&](long i, long j) { return i * rm + j; };
  IntMatrix a = IntMatrix::zero(2 * nv, nv);
  for (long i = 0; i < rn; ++i)
    for (long j = 0; j < rm; ++j) {
      long row = var(i, j);
      for (long l = 0; l < rm; ++l) a.at(row, var(i, l)) += m.F_mat.at(l, j);
      for (long l = 0; l < rn; ++l) a.at(row, var(l, j)) -= n.F_mat.at(i, l);
      row += nv;
      for (long l = 0; l < rm; ++l) a.at(row, var(i, l)) += m.V_mat.at(l, j);
      for (long l = 0; l < rn; ++l) a.at(row, var(l, j)) -= n.V_mat.at(i, l);
    }
  auto sol = solve_commutation(a, m.p, depth);
  const IntMatrix& b = sol.lattice_gens;
  Int pk = ppow(m.p, depth);
  auto expr = solve_integer(b, IntMatrix::identity(nv).scaled(pk));
  if (!expr) throw RelationViolation("p^depth multiples escape the hom lattice");
  FGAbelianGroup hom(nullspace(b).transpose().vstack(expr->transpose()));
  if (basis_out) {
    basis_out->clear();
    for (long c = 0; c < b.cols; ++c) {
      IntMatrix phi(rn, rm);
      for (long i = 0; i < rn; ++i)
        for (long j = 0; j < rm; ++j) phi.at(i, j) = mod_pos(b.at(var(i, j), c), pk);
      basis_out->push_back(std::move(phi));
    }
  }
  return hom;
}

}  // namespace

DieudonneModule dieudonne_module(long p, long k, IntMatrix f, IntMatrix v) {
  if (!is_prime_l(p)) throw NonPrime("p = " + std::to_string(p));
  if (k < 1) throw TruncationUnderflow("k = " + std::to_string(k));
  if (f.rows != f.cols || v.rows != v.cols || f.rows != v.rows)
    throw MismatchedTruncation("F and V must be square of equal rank");
  Int pk = ppow(p, k);
  DieudonneModule m;
  m.p = p; m.k = k; m.r = f.rows;
  m.F_mat = f.mod_reduced(pk);
  m.V_mat = v.mod_reduced(pk);
  return m;
}

DieudonneModule etale_rank1(long p, long k) {
  return dieudonne_module(p, k, IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{p}}));
}

DieudonneModule formal_rank1(long p, long k) {
  return dieudonne_module(p, k, IntMatrix::from_rows({{p}}), IntMatrix::from_rows({{1}}));
}

DieudonneModule supersingular_dieudonne(long p, long k) {
  IntMatrix fv = IntMatrix::from_rows({{0, p}, {1, 0}});
  return dieudonne_module(p, k, fv, fv);
}

DieudonneModule direct_sum_dieudonne(const DieudonneModule& a, const DieudonneModule& b) {
  if (a.p != b.p || a.k != b.k)
    throw MismatchedTruncation("direct sum needs matching p and k");
  long r = a.r + b.r;
  IntMatrix f = IntMatrix::zero(r, r), v = IntMatrix::zero(r, r);
  for (long i = 0; i < a.r; ++i)
    for (long j = 0; j < a.r; ++j) {
      f.at(i, j) = a.F_mat.at(i, j);
      v.at(i, j) = a.V_mat.at(i, j);
    }
  for (long i = 0; i < b.r; ++i)
    for (long j = 0; j < b.r; ++j) {
      f.at(a.r + i, a.r + j) = b.F_mat.at(i, j);
      v.at(a.r + i, a.r + j) = b.V_mat.at(i, j);
    }
  return dieudonne_module(a.p, a.k, std::move(f), std::move(v));
}

DieudonneModule reduce_dieudonne(const DieudonneModule& m, long k2) {
  if (k2 > m.k) throw TruncationUnderflow("cannot deepen a truncation by reduction");
  return dieudonne_module(m.p, k2, m.F_mat, m.V_mat);
}

DieudonneModule conjugate_dieudonne(const DieudonneModule& m, const IntMatrix& c) {
  IntMatrix cinv = inverse_mod(c, m.p, m.k);
  return dieudonne_module(m.p, m.k, c.mul(m.F_mat).mul(cinv), c.mul(m.V_mat).mul(cinv));
}

ModuleReport verify_dieudonne(const DieudonneModule& m) {
  ModuleReport rep;
  Int pk = ppow(m.p, m.k);
  auto check = [&](const IntMatrix& prod, const char* what) {
    for (long i = 0; i < m.r; ++i)
      for (long j = 0; j < m.r; ++j) {
        Int want = i == j ? Int(m.p) : Int(0);
        if (mod_pos(prod.at(i, j) - want, pk) != 0)
          rep.violations.push_back(std::string(what) + " fails at entry (" +
                                   std::to_string(i) + ", " + std::to_string(j) + ")");
      }
  };
  check(m.F_mat.mul(m.V_mat), "FV=p");
  check(m.V_mat.mul(m.F_mat), "VF=p");
  return rep;
}

bool is_formal(const DieudonneModule& m) {
  Int P = m.p;
  IntMatrix w = m.V_mat.mod_reduced(P);
  IntMatrix acc = IntMatrix::identity(m.r);
  for (long i = 0; i < m.r; ++i) acc = acc.mul(w).mod_reduced(P);
  return acc.is_zero();
}

SlopeData newton_slopes(const DieudonneModule& m) {
  long r = m.r, k = m.k;
  std::vector<Int> c = charpoly(m.F_mat);
  // valuations, with >= k meaning "not determined at this truncation"
  std::vector<long> v(static_cast<std::size_t>(r) + 1);
  for (long i = 0; i <= r; ++i)
    v[static_cast<std::size_t>(i)] = val_p(mod_pos(c[static_cast<std::size_t>(i)], ppow(m.p, k)), m.p, k);
  if (v[0] >= k)
    throw TruncationTooSmall("constant coefficient vanishes mod p^" + std::to_string(k));
  // lower convex hull of the certified points (i, v_i), v_i < k
  std::vector<std::pair<long, long>> hull;  // (i, v_i), monotone chain
  for (long i = 0; i <= r; ++i) {
    if (v[static_cast<std::size_t>(i)] >= k && i < r) continue;  // leading coeff v = 0 always enters
    std::pair<long, long> pt{i, v[static_cast<std::size_t>(i)]};
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // keep the hull lower-convex: drop (x2,y2) if it lies on or above the
      // segment (x1,y1)-(pt)
      if (Int(y2 - y1) * (pt.first - x1) >= Int(pt.second - y1) * (x2 - x1))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  // an undetermined coefficient strictly below the hull would change the
  // polygon; certify that p^k lies on or above it
  auto hull_at = [&](long x) -> Rat {
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
      auto [x1, y1] = hull[i];
      auto [x2, y2] = hull[i + 1];
      if (x1 <= x && x <= x2)
        return Rat(y1) + Rat(y2 - y1) * Rat(x - x1, x2 - x1);
    }
    return Rat(0);
  };
  for (long i = 0; i <= r; ++i)
    if (v[static_cast<std::size_t>(i)] >= k && i < r && Rat(k) < hull_at(i))
      throw TruncationTooSmall("coefficient of t^" + std::to_string(i) +
                               " undetermined below the Newton polygon");
  // hull segments left to right give root valuations in decreasing order
  SlopeData out;
  for (std::size_t i = hull.size() - 1; i >= 1; --i) {
    auto [x1, y1] = hull[i - 1];
    auto [x2, y2] = hull[i];
    Slope s{Rat(y1 - y2, x2 - x1), x2 - x1};
    if (!out.slopes.empty() && out.slopes.back().slope == s.slope)
      out.slopes.back().mult += s.mult;
    else
      out.slopes.push_back(s);
  }
  return out;
}

DieudonneHom hom_dieudonne(const DieudonneModule& m, const DieudonneModule& n,
                           long depth) {
  if (m.p != n.p) throw MismatchedTruncation("different primes");
  if (depth < 2) throw NoStabilization("hom computation needs depth >= 2");
  if (depth > std::min(m.k, n.k))
    throw TruncationTooSmall("hom depth exceeds the module truncations");
  FGAbelianGroup shallow = hom_at_depth(m, n, depth - 1, nullptr);
  DieudonneHom r;
  r.group = hom_at_depth(m, n, depth, &r.basis);
  if (capped_invariants(shallow, m.p, depth - 1) !=
      capped_invariants(r.group, m.p, depth - 1))
    throw NoStabilization("hom group does not stabilize between depths " +
                          std::to_string(depth - 1) + " and " + std::to_string(depth));
  return r;
}

EtaCartierComplex to_cartier(const DieudonneModule& m) {
  EtaCartierComplex c;
  c.p = m.p;
  c.mod.ring = EtaRingSel::Base;
  if (m.r > 0) {
    c.mod.part[0] = FGAbelianGroup(IntMatrix::identity(m.r).scaled(ppow(m.p, m.k)));
    c.F[0] = m.F_mat;
    c.V[0] = m.V_mat;
  }
  return c;
}

bool bridge_faithfulness_check(const DieudonneModule& m, const DieudonneModule& n,
                               long depth) {
  DieudonneHom hd = hom_dieudonne(m, n, depth);
  HomResult hc = hom_cartier(to_cartier(m), to_cartier(n), depth);
  return capped_invariants(hd.group, m.p, depth) ==
         capped_invariants(hc.group, m.p, depth);
}

}  // namespace cartier
