#include "cartier/cartier.hpp"

#include <algorithm>

#include "cartier/errors.hpp"

namespace cartier {

namespace {

IntMatrix stored_or_zero(const WeightMaps& m, long w, long rows, long cols) {
  auto it = m.find(w);
  if (it != m.end()) return it->second;
  return IntMatrix::zero(rows, cols);
}

bool columns_zero(const IntMatrix& m, const FGAbelianGroup& tgt) {
  for (long j = 0; j < m.cols; ++j)
    if (!tgt.element_is_zero(m.column(j))) return false;
  return true;
}

// relation lattice as columns, optionally extended by p^k Z
IntMatrix rel_lattice(const FGAbelianGroup& g, const Int& pk = 0) {
  IntMatrix l = g.relations.transpose();
  if (pk != 0) l = l.hstack(IntMatrix::identity(g.num_generators()).scaled(pk));
  return l;
}

Int ipow(long p, long k) {
  Int r = 1;
  for (long i = 0; i < k; ++i) r *= p;
  return r;
}

// do the columns of a and b span the same lattice?
bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  for (long j = 0; j < b.cols; ++j)
    if (!in_column_lattice(a, b.column(j))) return false;
  for (long j = 0; j < a.cols; ++j)
    if (!in_column_lattice(b, a.column(j))) return false;
  return true;
}

}  // namespace

IntMatrix EtaCartierComplex::d_at(long w) const {
  return stored_or_zero(d, w, mod.part_at(w + 1).num_generators(),
                        mod.part_at(w).num_generators());
}
IntMatrix EtaCartierComplex::F_at(long w) const {
  long n = mod.part_at(w).num_generators();
  return stored_or_zero(F, w, n, n);
}
IntMatrix EtaCartierComplex::V_at(long w) const {
  long n = mod.part_at(w).num_generators();
  return stored_or_zero(V, w, n, n);
}

ModuleReport verify_cartier(const EtaCartierComplex& m) {
  ModuleReport rep = verify_module(m.mod);
  auto note = [&](const std::string& what, long w, long j) {
    rep.violations.push_back(what + " fails at weight " + std::to_string(w) +
                             ", generator " + std::to_string(j));
  };
  auto check = [&](const IntMatrix& lhs, const IntMatrix& rhs, const FGAbelianGroup& tgt,
                   const std::string& what, long w) {
    IntMatrix diff = lhs.sub(rhs);
    for (long j = 0; j < diff.cols; ++j)
      if (!tgt.element_is_zero(diff.column(j))) note(what, w, j);
  };
  for (long w = m.mod.w_lo(); w <= m.mod.w_hi(); ++w) {
    FGAbelianGroup cur = m.mod.part_at(w), up = m.mod.part_at(w + 1);
    FGAbelianGroup up2 = m.mod.part_at(w + 2);
    for (auto [name, mat] :
         {std::pair<const char*, IntMatrix>{"d", m.d_at(w)},
          {"F", m.F_at(w)}, {"V", m.V_at(w)}}) {
      GroupMap gm{cur, name[0] == 'd' ? up : cur, mat};
      if (!gm.well_defined())
        rep.violations.push_back(std::string(name) + " not well defined at weight " +
                                 std::to_string(w));
    }
    IntMatrix dw = m.d_at(w), dw1 = m.d_at(w + 1);
    IntMatrix ew = m.mod.eta_at(w), ew1 = m.mod.eta_at(w + 1);
    check(dw1.mul(dw), ew1.mul(dw), up2, "d^2=eta d", w);
    check(m.V_at(w + 1).mul(dw), dw.mul(m.V_at(w)).scaled(m.p), up, "Vd=pdV", w);
    check(dw.mul(m.F_at(w)), m.F_at(w + 1).mul(dw).scaled(m.p), up, "dF=pFd", w);
    check(m.F_at(w + 1).mul(dw).mul(m.V_at(w)), dw.add(ew), up, "FdV=d+eta", w);
    check(m.F_at(w).mul(m.V_at(w)),
          IntMatrix::identity(cur.num_generators()).scaled(m.p), cur, "FV=p", w);
    check(ew.mul(m.F_at(w)), m.F_at(w + 1).mul(ew), up, "eta F=F eta", w);
    check(ew.mul(m.V_at(w)), m.V_at(w + 1).mul(ew), up, "eta V=V eta", w);
    check(ew1.mul(dw), dw1.mul(ew), up2, "eta d=d eta", w);
  }
  return rep;
}

FixedPointModule fixed_pi0(const EtaCartierComplex& m) {
  FixedPointModule r;
  for (long w = m.mod.w_lo(); w <= m.mod.w_hi(); ++w) {
    FGAbelianGroup a = m.mod.part_at(w), b = m.mod.part_at(w + 1);
    long ga = a.num_generators(), gb = b.num_generators();
    if (ga + gb == 0) continue;
    // d x - p y in the relation lattice of M_{w+1}
    IntMatrix cond = m.d_at(w).hstack(IntMatrix::identity(gb).scaled(-m.p));
    IntMatrix k = preimage_lattice(cond, rel_lattice(b));
    FGAbelianGroup ambient = FGAbelianGroup::direct_sum(a, b);
    FGAbelianGroup nw = subgroup_presentation(k, ambient);
    if (nw.is_zero() && k.cols == 0) continue;
    r.parts.set(w, nw);
    r.gens[w] = k;
    r.proj1[w] = k.submatrix_rows(0, ga);
    r.proj2[w] = k.submatrix_rows(ga, ga + gb);
  }
  return r;
}

OrbitModule orbit_pi0(const EtaCartierComplex& m) {
  OrbitModule r;
  for (long w = m.mod.w_lo(); w <= m.mod.w_hi() + 1; ++w) {
    FGAbelianGroup cur = m.mod.part_at(w), below = m.mod.part_at(w - 1);
    long gm = cur.num_generators(), ge = below.num_generators();
    if (gm + ge == 0) continue;
    IntMatrix rel = cur.relations.hstack(IntMatrix::zero(cur.relations.rows, ge));
    rel = rel.vstack(
        IntMatrix::zero(below.relations.rows, gm).hstack(below.relations));
    // d(n) = p (e n) for every generator n of M_{w-1}
    IntMatrix dmat = m.d_at(w - 1);  // ge columns, gm rows
    IntMatrix extra = dmat.transpose().hstack(IntMatrix::identity(ge).scaled(-m.p));
    rel = rel.vstack(extra);
    r.parts.set(w, FGAbelianGroup(rel));
    r.m_count[w] = gm;
    r.from_m[w] = IntMatrix::identity(gm).vstack(IntMatrix::zero(ge, gm));
  }
  return r;
}

namespace {

WeightMaps into_fixed(const EtaCartierComplex& m, const FixedPointModule& n,
                      bool top_is_f, const std::string& what) {
  WeightMaps r;
  for (const auto& [w, k] : n.gens) {
    FGAbelianGroup a = m.mod.part_at(w), b = m.mod.part_at(w + 1);
    long ga = a.num_generators();
    IntMatrix top, bot;
    if (top_is_f) {
      top = m.F_at(w);
      bot = m.F_at(w + 1).mul(m.d_at(w));
    } else {
      top = IntMatrix::identity(ga).scaled(m.p);
      bot = m.d_at(w);
    }
    IntMatrix targets = top.vstack(bot);
    auto e = express_in_generators(k, FGAbelianGroup::direct_sum(a, b), targets);
    if (!e) throw RelationViolation(what + " does not land in the fixed-point module");
    r[w] = *e;
  }
  return r;
}

}  // namespace

WeightMaps norm_pi0(const EtaCartierComplex& m, const FixedPointModule& n) {
  return into_fixed(m, n, false, "norm");
}

WeightMaps induced_F_hat(const EtaCartierComplex& m, const FixedPointModule& n) {
  return into_fixed(m, n, true, "induced Frobenius");
}

WeightMaps induced_V_hat(const EtaCartierComplex& m, const OrbitModule& o) {
  WeightMaps r;
  for (const auto& [w, gm] : o.m_count) {
    long total = o.parts.at(w).num_generators();
    long ge = total - gm;
    IntMatrix vm = m.V_at(w);
    IntMatrix ve = m.d_at(w - 1).mul(m.V_at(w - 1));
    (void)ge;
    r[w] = vm.hstack(ve);
  }
  return r;
}

namespace {

// stable V-image lattice of M_w modulo p^depth; returns the power matrix at
// stabilization, or nullopt if the chain keeps moving past the allowance
std::optional<IntMatrix> stable_v_power(const EtaCartierComplex& m, long w, long depth) {
  Int pk = ipow(m.p, depth);
  FGAbelianGroup g = m.mod.part_at(w);
  IntMatrix base = rel_lattice(g, pk);
  IntMatrix vn = m.V_at(w);
  IntMatrix prev = IntMatrix::identity(g.num_generators());
  // the image chain of a finite group of exponent p^depth stabilizes within
  // depth * (generator count) steps; allow a margin beyond that
  long bound = depth * std::max<long>(1, g.num_generators()) + 2;
  for (long n = 1; n <= bound; ++n) {
    IntMatrix curpow = vn.mul(prev);
    if (same_lattice(prev.hstack(base), curpow.hstack(base))) return prev;
    prev = curpow;
  }
  return std::nullopt;
}

}  // namespace

bool is_derived_v_complete(const EtaCartierComplex& m, long depth) {
  Int pk = ipow(m.p, depth);
  for (long w = m.mod.w_lo(); w <= m.mod.w_hi(); ++w) {
    auto pw = stable_v_power(m, w, depth);
    if (!pw) throw NoStabilization("V-image chain at weight " + std::to_string(w) +
                                   " does not stabilize at depth " + std::to_string(depth));
    IntMatrix base = rel_lattice(m.mod.part_at(w), pk);
    for (long j = 0; j < pw->cols; ++j)
      if (!in_column_lattice(base, pw->column(j))) return false;
  }
  return true;
}

EtaCartierComplex v_complete(const EtaCartierComplex& m, long depth) {
  Int pk = ipow(m.p, depth);
  EtaCartierComplex r = m;
  for (long w = m.mod.w_lo(); w <= m.mod.w_hi(); ++w) {
    auto pw = stable_v_power(m, w, depth);
    if (!pw) throw NoStabilization("V-image chain at weight " + std::to_string(w) +
                                   " does not stabilize at depth " + std::to_string(depth));
    FGAbelianGroup g = m.mod.part_at(w);
    IntMatrix rel = g.relations.vstack(pw->transpose());
    rel = rel.vstack(IntMatrix::identity(g.num_generators()).scaled(pk));
    r.mod.part[w] = FGAbelianGroup(rel);
  }
  return r;
}

TcHeart tc_heart(const EtaCartierComplex& m, const WeightMaps& frob) {
  TcHeart t;
  for (long w = m.mod.w_lo(); w <= m.mod.w_hi(); ++w) {
    FGAbelianGroup g = m.mod.part_at(w);
    long n = g.num_generators();
    if (n == 0) continue;
    IntMatrix fr = stored_or_zero(frob, w, n, n);
    GroupMap one_minus{g, g, IntMatrix::identity(n).sub(fr)};
    auto kc = kernel_cokernel(one_minus);
    if (!kc.ker.is_zero()) t.h0.set(w, kc.ker);
    if (!kc.coker.is_zero()) t.hm1.set(w, kc.coker);
  }
  return t;
}

TcHeart tc_heart(const EtaCartierComplex& m) { return tc_heart(m, m.F); }

IntMatrix CartierMap::comp_at(long w) const {
  return stored_or_zero(comp, w, cod.mod.part_at(w).num_generators(),
                        dom.mod.part_at(w).num_generators());
}

void CartierMap::validate() const {
  long lo = std::min(dom.mod.w_lo(), cod.mod.w_lo());
  long hi = std::max(dom.mod.w_hi(), cod.mod.w_hi());
  for (long w = lo; w <= hi; ++w) {
    GroupMap gm{dom.mod.part_at(w), cod.mod.part_at(w), comp_at(w)};
    if (!gm.well_defined())
      throw RelationViolation("map not well defined at weight " + std::to_string(w));
    FGAbelianGroup up = cod.mod.part_at(w + 1);
    if (!columns_zero(cod.d_at(w).mul(comp_at(w)).sub(comp_at(w + 1).mul(dom.d_at(w))), up))
      throw RelationViolation("map does not commute with d at weight " + std::to_string(w));
    if (!columns_zero(
            cod.mod.eta_at(w).mul(comp_at(w)).sub(comp_at(w + 1).mul(dom.mod.eta_at(w))),
            up))
      throw RelationViolation("map does not commute with eta at weight " + std::to_string(w));
    FGAbelianGroup cur = cod.mod.part_at(w);
    if (!columns_zero(cod.F_at(w).mul(comp_at(w)).sub(comp_at(w).mul(dom.F_at(w))), cur))
      throw RelationViolation("map does not commute with F at weight " + std::to_string(w));
    if (!columns_zero(cod.V_at(w).mul(comp_at(w)).sub(comp_at(w).mul(dom.V_at(w))), cur))
      throw RelationViolation("map does not commute with V at weight " + std::to_string(w));
  }
}

WeightMaps fixed_map(const CartierMap& f, const FixedPointModule& nd,
                     const FixedPointModule& nc) {
  WeightMaps r;
  for (const auto& [w, kd] : nd.gens) {
    auto it = nc.gens.find(w);
    if (it == nc.gens.end()) continue;
    FGAbelianGroup a = f.cod.mod.part_at(w), b = f.cod.mod.part_at(w + 1);
    long ga = a.num_generators(), gb = b.num_generators();
    long da = f.dom.mod.part_at(w).num_generators();
    IntMatrix block =
        f.comp_at(w).hstack(IntMatrix::zero(ga, kd.rows - da));
    IntMatrix bot = IntMatrix::zero(gb, da).hstack(f.comp_at(w + 1));
    IntMatrix moved = block.vstack(bot).mul(kd);
    auto e = express_in_generators(it->second, FGAbelianGroup::direct_sum(a, b), moved);
    if (!e) throw RelationViolation("induced fixed-point map is not defined");
    r[w] = *e;
  }
  return r;
}

WeightMaps orbit_map(const CartierMap& f, const OrbitModule& od, const OrbitModule& oc) {
  WeightMaps r;
  for (const auto& [w, gmd] : od.m_count) {
    auto it = oc.m_count.find(w);
    if (it == oc.m_count.end()) continue;
    long ged = od.parts.at(w).num_generators() - gmd;
    long gmc = it->second, gec = oc.parts.at(w).num_generators() - gmc;
    IntMatrix top = f.comp_at(w).hstack(IntMatrix::zero(gmc, ged));
    IntMatrix bot = IntMatrix::zero(gec, gmd).hstack(f.comp_at(w - 1));
    r[w] = top.vstack(bot);
  }
  return r;
}

namespace {

struct HomProblem {
  const EtaCartierComplex& m;
  const EtaCartierComplex& n;
  long lo, hi;
  std::map<long, long> off;  // variable offset of phi_w (row-major gn x gm)
  long xvars = 0;

  std::vector<std::vector<Int>> rows;  // dense, grows with slack columns
  long total_cols = 0;

  HomProblem(const EtaCartierComplex& mm, const EtaCartierComplex& nn)
      : m(mm), n(nn) {
    lo = std::min(m.mod.w_lo(), n.mod.w_lo());
    hi = std::max(m.mod.w_hi(), n.mod.w_hi());
    for (long w = lo; w <= hi; ++w) {
      off[w] = xvars;
      xvars += n.mod.part_at(w).num_generators() * m.mod.part_at(w).num_generators();
    }
    total_cols = xvars;
  }

  long var(long w, long i, long j) const {
    return off.at(w) + i * m.mod.part_at(w).num_generators() + j;
  }

  // L . phi_{w1} - phi_{w2} . R == 0 in the group G, modulo its relations
  void add_block(const IntMatrix* L, long w1, const IntMatrix& R, long w2,
                 const FGAbelianGroup& G) {
    long t = G.num_generators();
    long c = R.cols;
    long gm2 = m.mod.part_at(w2).num_generators();
    if (t == 0 || c == 0) return;
    long nrel = G.relations.rows;
    long slack0 = total_cols;
    total_cols += nrel * c;
    for (auto& row : rows) row.resize(total_cols, 0);
    for (long i = 0; i < t; ++i)
      for (long j = 0; j < c; ++j) {
        std::vector<Int> row(total_cols, 0);
        if (L)
          for (long rr = 0; rr < L->cols; ++rr)
            if (L->at(i, rr) != 0) row[var(w1, rr, j)] += L->at(i, rr);
        for (long cc = 0; cc < gm2; ++cc)
          if (R.at(cc, j) != 0) row[var(w2, i, cc)] -= R.at(cc, j);
        for (long l = 0; l < nrel; ++l)
          if (G.relations.at(l, i) != 0)
            row[slack0 + l * c + j] += G.relations.at(l, i);
        rows.push_back(std::move(row));
      }
  }
};

FGAbelianGroup hom_at_depth(const EtaCartierComplex& m, const EtaCartierComplex& n,
                            long depth, std::vector<WeightMaps>* basis_out) {
  HomProblem hp(m, n);
  if (hp.xvars == 0) return FGAbelianGroup::zero();
  for (long w = hp.lo; w <= hp.hi; ++w) {
    FGAbelianGroup nw = n.mod.part_at(w), nw1 = n.mod.part_at(w + 1);
    // well-definedness: phi_w maps dom relations into cod relations
    IntMatrix relT = m.mod.part_at(w).relations.transpose();
    hp.add_block(nullptr, w, relT, w, nw);
    IntMatrix etaM = m.mod.eta_at(w), dM = m.d_at(w);
    IntMatrix etaN = n.mod.eta_at(w), dN = n.d_at(w);
    hp.add_block(&etaN, w, etaM, w + 1, nw1);
    hp.add_block(&dN, w, dM, w + 1, nw1);
    IntMatrix fM = m.F_at(w), fN = n.F_at(w), vM = m.V_at(w), vN = n.V_at(w);
    hp.add_block(&fN, w, fM, w, nw);
    hp.add_block(&vN, w, vM, w, nw);
  }
  IntMatrix a(static_cast<long>(hp.rows.size()), hp.total_cols);
  for (long i = 0; i < a.rows; ++i) {
    hp.rows[static_cast<size_t>(i)].resize(hp.total_cols, 0);
    for (long j = 0; j < a.cols; ++j) a.at(i, j) = hp.rows[static_cast<size_t>(i)][j];
  }
  auto sol = solve_commutation(a, m.p, depth);
  IntMatrix b = sol.lattice_gens.submatrix_rows(0, hp.xvars);
  // trivial maps: p^depth times anything, and columns in the target relations
  Int pk = ipow(m.p, depth);
  IntMatrix triv = IntMatrix::identity(hp.xvars).scaled(pk);
  for (long w = hp.lo; w <= hp.hi; ++w) {
    const FGAbelianGroup& nw = n.mod.part_at(w);
    long gm = m.mod.part_at(w).num_generators(), gn = nw.num_generators();
    for (long l = 0; l < nw.relations.rows; ++l)
      for (long j = 0; j < gm; ++j) {
        IntMatrix col = IntMatrix::zero(hp.xvars, 1);
        for (long i = 0; i < gn; ++i) col.at(hp.var(w, i, j), 0) = nw.relations.at(l, i);
        triv = triv.hstack(col);
      }
  }
  auto expr = solve_integer(b, triv);
  if (!expr)
    throw RelationViolation("trivial maps do not lie in the hom solution lattice");
  IntMatrix rel = nullspace(b).transpose().vstack(expr->transpose());
  FGAbelianGroup hom(rel);
  if (basis_out) {
    basis_out->clear();
    for (long c = 0; c < b.cols; ++c) {
      WeightMaps maps;
      for (long w = hp.lo; w <= hp.hi; ++w) {
        long gm = m.mod.part_at(w).num_generators(), gn = n.mod.part_at(w).num_generators();
        if (gm == 0 || gn == 0) continue;
        IntMatrix phi(gn, gm);
        for (long i = 0; i < gn; ++i)
          for (long j = 0; j < gm; ++j) phi.at(i, j) = b.at(hp.var(w, i, j), c);
        maps[w] = phi;
      }
      basis_out->push_back(std::move(maps));
    }
  }
  return hom;
}

// invariant factors with p-valuation capped at cap
std::vector<Int> capped_invariants(const FGAbelianGroup& g, long p, long cap) {
  Int pc = ipow(p, cap);
  std::vector<Int> r;
  for (const auto& f : g.invariant_factors) {
    Int v = f == 0 ? pc : gcd_int(f, pc);
    if (v > 1) r.push_back(v);
  }
  for (long i = 0; i < g.free_rank; ++i) r.push_back(pc);
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

HomResult hom_cartier(const EtaCartierComplex& m, const EtaCartierComplex& n, long depth) {
  if (depth < 2) throw NoStabilization("hom computation needs depth >= 2");
  FGAbelianGroup shallow = hom_at_depth(m, n, depth - 1, nullptr);
  HomResult r;
  r.group = hom_at_depth(m, n, depth, &r.basis);
  if (capped_invariants(shallow, m.p, depth - 1) !=
      capped_invariants(r.group, m.p, depth - 1))
    throw NoStabilization("hom group does not stabilize between depths " +
                          std::to_string(depth - 1) + " and " + std::to_string(depth));
  return r;
}

}  // namespace cartier
