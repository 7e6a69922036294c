#include "cartier/eta_graded.hpp"

#include <algorithm>

#include "cartier/errors.hpp"

namespace cartier {

namespace {

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r = IntMatrix::zero(a.rows * b.rows, a.cols * b.cols);
  for (long i = 0; i < a.rows; ++i)
    for (long j = 0; j < a.cols; ++j) {
      if (a.at(i, j) == 0) continue;
      for (long k = 0; k < b.rows; ++k)
        for (long l = 0; l < b.cols; ++l)
          r.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
    }
  return r;
}

FGAbelianGroup tensor_group(const FGAbelianGroup& g, const FGAbelianGroup& h) {
  long ng = g.num_generators(), nh = h.num_generators();
  IntMatrix rel = kron(g.relations, IntMatrix::identity(nh))
                      .vstack(kron(IntMatrix::identity(ng), h.relations));
  return FGAbelianGroup(rel);
}

bool columns_zero(const IntMatrix& m, const FGAbelianGroup& tgt) {
  for (long j = 0; j < m.cols; ++j)
    if (!tgt.element_is_zero(m.column(j))) return false;
  return true;
}

// block layout of (M (x) N)_w, ordered by the weight of the left factor
struct Blocks {
  std::vector<std::array<long, 2>> a_off;  // {left weight, offset}
  long total = 0;
};

Blocks blocks_at(const GradedEtaModule& m, const GradedEtaModule& n, long w) {
  Blocks b;
  for (const auto& [a, g] : m.part) {
    long sz = g.num_generators() * n.part_at(w - a).num_generators();
    if (sz > 0) {
      b.a_off.push_back({a, b.total});
      b.total += sz;
    }
  }
  return b;
}

long offset_of(const Blocks& b, long a) {
  for (const auto& e : b.a_off)
    if (e[0] == a) return e[1];
  return -1;
}

}  // namespace

FGAbelianGroup eta_ring_weight(EtaRingSel r, long w) {
  if (w < 0) return FGAbelianGroup::zero();
  if (w == 0) return FGAbelianGroup::free_group(1);
  if (r == EtaRingSel::Base) {
    IntMatrix rel(1, 1, {Int(2)});  // 2 eta^w = 0
    return FGAbelianGroup(rel);
  }
  // monomials eta^{w-b} d^b indexed by b = 0..w
  long n = w + 1;
  IntMatrix rel = IntMatrix::zero(0, n);
  for (long b = 0; b <= w; ++b) {
    long a = w - b;
    if (a >= 1) {
      IntMatrix rr = IntMatrix::zero(1, n);
      rr.at(0, b) = 2;
      rel = rel.vstack(rr);
    }
    if (b >= 2) {  // d^b = eta d^{b-1}
      IntMatrix rr = IntMatrix::zero(1, n);
      rr.at(0, b) = 1;
      rr.at(0, b - 1) = -1;
      rel = rel.vstack(rr);
    }
  }
  return FGAbelianGroup(rel);
}

long GradedEtaModule::w_lo() const { return part.empty() ? 0 : part.begin()->first; }
long GradedEtaModule::w_hi() const { return part.empty() ? 0 : part.rbegin()->first; }

FGAbelianGroup GradedEtaModule::part_at(long w) const {
  auto it = part.find(w);
  return it == part.end() ? FGAbelianGroup::zero() : it->second;
}

IntMatrix GradedEtaModule::eta_at(long w) const {
  auto it = eta.find(w);
  if (it != eta.end()) return it->second;
  return IntMatrix::zero(part_at(w + 1).num_generators(), part_at(w).num_generators());
}

IntMatrix GradedEtaModule::d_at(long w) const {
  auto it = dmap.find(w);
  if (it != dmap.end()) return it->second;
  return IntMatrix::zero(part_at(w + 1).num_generators(), part_at(w).num_generators());
}

ModuleReport verify_module(const GradedEtaModule& m) {
  ModuleReport rep;
  if (m.ring == EtaRingSel::Base && !m.dmap.empty())
    rep.violations.push_back("d action present on a module over the base ring");
  for (long w = m.w_lo(); w <= m.w_hi(); ++w) {
    FGAbelianGroup src = m.part_at(w), tgt = m.part_at(w + 1);
    GroupMap e{src, tgt, m.eta_at(w)};
    if (!e.well_defined()) {
      rep.violations.push_back("eta not well defined at weight " + std::to_string(w));
      continue;
    }
    IntMatrix twice = m.eta_at(w).scaled(2);
    for (long j = 0; j < twice.cols; ++j)
      if (!tgt.element_is_zero(twice.column(j)))
        rep.violations.push_back("2(eta m) != 0 at weight " + std::to_string(w) +
                                 ", generator " + std::to_string(j));
    if (m.ring == EtaRingSel::Circle) {
      GroupMap dm{src, tgt, m.d_at(w)};
      if (!dm.well_defined()) {
        rep.violations.push_back("d not well defined at weight " + std::to_string(w));
        continue;
      }
      IntMatrix dd = m.d_at(w + 1).mul(m.d_at(w));
      IntMatrix ed = m.eta_at(w + 1).mul(m.d_at(w));
      IntMatrix diff = dd.sub(ed);
      FGAbelianGroup tgt2 = m.part_at(w + 2);
      for (long j = 0; j < diff.cols; ++j)
        if (!tgt2.element_is_zero(diff.column(j)))
          rep.violations.push_back("d^2 != eta d at weight " + std::to_string(w) +
                                   ", generator " + std::to_string(j));
    }
  }
  return rep;
}

GradedEtaModule eta_ring_module(EtaRingSel r, long w_max) {
  GradedEtaModule m;
  m.ring = r;
  for (long w = 0; w <= w_max; ++w) m.part[w] = eta_ring_weight(r, w);
  for (long w = 0; w < w_max; ++w) {
    long nc = m.part_at(w).num_generators(), nr = m.part_at(w + 1).num_generators();
    IntMatrix e = IntMatrix::zero(nr, nc);
    for (long b = 0; b < nc; ++b) e.at(b, b) = 1;  // eta^a d^b |-> eta^{a+1} d^b
    m.eta[w] = e;
    if (r == EtaRingSel::Circle) {
      IntMatrix d = IntMatrix::zero(nr, nc);
      for (long b = 0; b < nc; ++b) d.at(b + 1, b) = 1;  // eta^a d^b |-> eta^a d^{b+1}
      m.dmap[w] = d;
    }
  }
  return m;
}

GradedEtaModule twist(const GradedEtaModule& m, long i) {
  GradedEtaModule r;
  r.ring = m.ring;
  for (const auto& [w, g] : m.part) r.part[w + i] = g;
  for (const auto& [w, e] : m.eta) r.eta[w + i] = e;
  for (const auto& [w, d] : m.dmap) r.dmap[w + i] = d;
  return r;
}

GradedAbelianGroup to_graded(const GradedEtaModule& m) {
  GradedAbelianGroup g;
  for (const auto& [w, p] : m.part)
    if (!p.is_zero()) g.set(w, p);
  return g;
}

GradedEtaModule direct_sum_eta(const GradedEtaModule& a, const GradedEtaModule& b) {
  GradedEtaModule r;
  r.ring = a.ring;
  long lo = std::min(a.w_lo(), b.w_lo()), hi = std::max(a.w_hi(), b.w_hi());
  if (a.part.empty() && b.part.empty()) return r;
  auto blockdiag = [](const IntMatrix& x, const IntMatrix& y) {
    return x.hstack(IntMatrix::zero(x.rows, y.cols))
        .vstack(IntMatrix::zero(y.rows, x.cols).hstack(y));
  };
  for (long w = lo; w <= hi; ++w) {
    FGAbelianGroup g = FGAbelianGroup::direct_sum(a.part_at(w), b.part_at(w));
    if (g.num_generators() > 0) r.part[w] = std::move(g);
  }
  for (long w = lo; w < hi; ++w) {
    IntMatrix e = blockdiag(a.eta_at(w), b.eta_at(w));
    if (!e.is_zero()) r.eta[w] = e;
    if (r.ring == EtaRingSel::Circle) {
      IntMatrix d = blockdiag(a.d_at(w), b.d_at(w));
      if (!d.is_zero()) r.dmap[w] = d;
    }
  }
  return r;
}

IntMatrix GradedEtaMap::comp_at(long w) const {
  auto it = comp.find(w);
  if (it != comp.end()) return it->second;
  return IntMatrix::zero(cod.part_at(w).num_generators(), dom.part_at(w).num_generators());
}

void GradedEtaMap::validate() const {
  long lo = std::min(dom.w_lo(), cod.w_lo()), hi = std::max(dom.w_hi(), cod.w_hi());
  if (dom.part.empty() && cod.part.empty()) return;
  for (long w = lo; w <= hi; ++w) {
    GroupMap f{dom.part_at(w), cod.part_at(w), comp_at(w)};
    if (!f.well_defined())
      throw RelationViolation("graded map not well defined at weight " + std::to_string(w));
    IntMatrix lhs = cod.eta_at(w).mul(comp_at(w));
    IntMatrix rhs = comp_at(w + 1).mul(dom.eta_at(w));
    if (!columns_zero(lhs.sub(rhs), cod.part_at(w + 1)))
      throw RelationViolation("graded map does not commute with eta at weight " +
                              std::to_string(w));
    if (dom.ring == EtaRingSel::Circle) {
      IntMatrix dl = cod.d_at(w).mul(comp_at(w));
      IntMatrix dr = comp_at(w + 1).mul(dom.d_at(w));
      if (!columns_zero(dl.sub(dr), cod.part_at(w + 1)))
        throw RelationViolation("graded map does not commute with d at weight " +
                                std::to_string(w));
    }
  }
}

GradedEtaMap graded_eta_identity(const GradedEtaModule& m) {
  GradedEtaMap f{m, m, {}};
  for (const auto& [w, g] : m.part) f.comp[w] = IntMatrix::identity(g.num_generators());
  return f;
}

GradedEtaMap compose(const GradedEtaMap& g, const GradedEtaMap& f) {
  GradedEtaMap r{f.dom, g.cod, {}};
  long lo = std::min(f.dom.w_lo(), g.cod.w_lo()), hi = std::max(f.dom.w_hi(), g.cod.w_hi());
  if (f.dom.part.empty() && g.cod.part.empty()) return r;
  for (long w = lo; w <= hi; ++w) {
    IntMatrix m = g.comp_at(w).mul(f.comp_at(w));
    if (!m.is_zero()) r.comp[w] = m;
  }
  return r;
}

bool graded_maps_equal(const GradedEtaMap& f, const GradedEtaMap& g) {
  long lo = std::min(f.dom.w_lo(), f.cod.w_lo()), hi = std::max(f.dom.w_hi(), f.cod.w_hi());
  if (f.dom.part.empty() && f.cod.part.empty()) return true;
  for (long w = lo; w <= hi; ++w)
    if (!columns_zero(f.comp_at(w).sub(g.comp_at(w)), f.cod.part_at(w))) return false;
  return true;
}

GradedEtaModule koszul_tensor(const GradedEtaModule& m, const GradedEtaModule& n) {
  if (m.ring != EtaRingSel::Base || n.ring != EtaRingSel::Base)
    throw RelationViolation("koszul tensor is defined over the base ring only");
  GradedEtaModule r;
  r.ring = EtaRingSel::Base;
  if (m.part.empty() || n.part.empty()) return r;
  long lo = m.w_lo() + n.w_lo(), hi = m.w_hi() + n.w_hi();
  for (long w = lo; w <= hi; ++w) {
    Blocks bl = blocks_at(m, n, w);
    if (bl.total == 0) continue;
    FGAbelianGroup g = FGAbelianGroup::zero();
    bool first = true;
    for (const auto& e : bl.a_off) {
      FGAbelianGroup piece = tensor_group(m.part_at(e[0]), n.part_at(w - e[0]));
      g = first ? piece : FGAbelianGroup::direct_sum(g, piece);
      first = false;
    }
    r.part[w] = std::move(g);
  }
  for (long w = lo; w < hi; ++w) {
    Blocks src = blocks_at(m, n, w), dst = blocks_at(m, n, w + 1);
    if (src.total == 0 || dst.total == 0) continue;
    IntMatrix e = IntMatrix::zero(dst.total, src.total);
    for (const auto& blk : src.a_off) {
      long a = blk[0], b = w - a;
      long na = m.part_at(a).num_generators(), nb = n.part_at(b).num_generators();
      long o1 = offset_of(dst, a + 1);
      if (o1 >= 0) {
        IntMatrix k = kron(m.eta_at(a), IntMatrix::identity(nb));
        for (long rr = 0; rr < k.rows; ++rr)
          for (long cc = 0; cc < k.cols; ++cc)
            if (k.at(rr, cc) != 0) e.at(o1 + rr, blk[1] + cc) += k.at(rr, cc);
      }
      long o2 = offset_of(dst, a);
      if (o2 >= 0) {
        Int sign = (a % 2 == 0) ? 1 : -1;
        IntMatrix k = kron(IntMatrix::identity(na), n.eta_at(b)).scaled(sign);
        for (long rr = 0; rr < k.rows; ++rr)
          for (long cc = 0; cc < k.cols; ++cc)
            if (k.at(rr, cc) != 0) e.at(o2 + rr, blk[1] + cc) += k.at(rr, cc);
      }
    }
    if (!e.is_zero()) r.eta[w] = e;
  }
  return r;
}

GradedEtaMap koszul_braiding(const GradedEtaModule& m, const GradedEtaModule& n) {
  GradedEtaMap f{koszul_tensor(m, n), koszul_tensor(n, m), {}};
  if (m.part.empty() || n.part.empty()) return f;
  long lo = m.w_lo() + n.w_lo(), hi = m.w_hi() + n.w_hi();
  for (long w = lo; w <= hi; ++w) {
    Blocks src = blocks_at(m, n, w), dst = blocks_at(n, m, w);
    if (src.total == 0) continue;
    IntMatrix mat = IntMatrix::zero(dst.total, src.total);
    for (const auto& blk : src.a_off) {
      long a = blk[0], b = w - a;
      long na = m.part_at(a).num_generators(), nb = n.part_at(b).num_generators();
      long o = offset_of(dst, b);
      Int sign = (a % 2 != 0 && b % 2 != 0) ? -1 : 1;
      for (long i = 0; i < na; ++i)
        for (long j = 0; j < nb; ++j)
          mat.at(o + j * na + i, blk[1] + i * nb + j) = sign;
    }
    if (!mat.is_zero()) f.comp[w] = mat;
  }
  return f;
}

}  // namespace cartier
