#include "cartier/chain.hpp"

#include <algorithm>

#include "cartier/errors.hpp"

namespace cartier {

namespace {

IntMatrix hstack_m(const IntMatrix& a, const IntMatrix& b) { return a.hstack(b); }
IntMatrix vstack_m(const IntMatrix& a, const IntMatrix& b) { return a.vstack(b); }

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

// presentation of G (x) H: generator (g,h) at index g*nh + h
FGAbelianGroup tensor_group(const FGAbelianGroup& g, const FGAbelianGroup& h) {
  long ng = g.num_generators(), nh = h.num_generators();
  IntMatrix rel = vstack_m(kron(g.relations, IntMatrix::identity(nh)),
                                    kron(IntMatrix::identity(ng), h.relations));
  return FGAbelianGroup(rel);
}

}  // namespace

FGAbelianGroup coeff_group(const CoeffRing& r, long rank) {
  if (r.tag == CoeffTag::ZmodM) {
    IntMatrix rel = IntMatrix::identity(rank);
    for (long i = 0; i < rank; ++i) rel.at(i, i) = r.modulus;
    return FGAbelianGroup(rel);
  }
  return FGAbelianGroup::free_group(rank);
}

long ChainComplex::lo() const { return groups.empty() ? 0 : groups.begin()->first; }
long ChainComplex::hi() const { return groups.empty() ? 0 : groups.rbegin()->first; }

FGAbelianGroup ChainComplex::group(long n) const {
  auto it = groups.find(n);
  return it == groups.end() ? FGAbelianGroup::zero() : it->second;
}

IntMatrix ChainComplex::diff_at(long n) const {
  auto it = diff.find(n);
  if (it != diff.end()) return it->second;
  return IntMatrix::zero(group(n - 1).num_generators(), group(n).num_generators());
}

void ChainComplex::validate() const {
  for (const auto& [n, g] : groups) {
    GroupMap d{g, group(n - 1), diff_at(n)};
    if (!d.well_defined())
      throw RelationViolation("differential not well defined in degree " + std::to_string(n));
    IntMatrix dd = diff_at(n - 1).mul(diff_at(n));
    FGAbelianGroup tgt = group(n - 2);
    for (long j = 0; j < dd.cols; ++j)
      if (!tgt.element_is_zero(dd.column(j)))
        throw RelationViolation("d*d != 0 in degree " + std::to_string(n));
  }
  for (const auto& [n, m] : diff) {
    if (m.rows != group(n - 1).num_generators() || m.cols != group(n).num_generators())
      throw RelationViolation("differential has wrong shape in degree " + std::to_string(n));
  }
}

ChainComplex zero_complex(const CoeffRing& r) { return ChainComplex{r, {}, {}}; }

ChainComplex concentrated(const CoeffRing& r, long deg, FGAbelianGroup g) {
  ChainComplex c{r, {}, {}};
  c.groups[deg] = std::move(g);
  return c;
}

ChainComplex shift(const ChainComplex& c, long s) {
  ChainComplex r{c.ring, {}, {}};
  Int sign = (s % 2 == 0) ? 1 : -1;
  for (const auto& [n, g] : c.groups) r.groups[n + s] = g;
  for (const auto& [n, m] : c.diff) r.diff[n + s] = m.scaled(sign);
  return r;
}

FGAbelianGroup homology(const ChainComplex& c, long n) {
  GroupMap d{c.group(n), c.group(n - 1), c.diff_at(n)};
  auto kc = kernel_cokernel(d);
  auto expressed = express_in_generators(kc.ker_gens, c.group(n), c.diff_at(n + 1));
  if (!expressed)
    throw RelationViolation("boundaries do not lie among cycles in degree " + std::to_string(n));
  FGAbelianGroup h(vstack_m(kc.ker.relations, expressed->transpose()));
  // rational coefficients: Q is flat, so H(C (x) Q) = H(C) (x) Q
  if (c.ring.tag == CoeffTag::Q) return FGAbelianGroup::free_group(h.free_rank);
  return h;
}

std::map<long, FGAbelianGroup> homology_all(const ChainComplex& c) {
  std::map<long, FGAbelianGroup> h;
  if (c.groups.empty()) return h;
  for (long n = c.lo(); n <= c.hi(); ++n) {
    FGAbelianGroup g = homology(c, n);
    if (!g.is_zero()) h[n] = std::move(g);
  }
  return h;
}

bool is_acyclic(const ChainComplex& c) { return homology_all(c).empty(); }

IntMatrix ChainMap::comp_at(long n) const {
  auto it = comp.find(n);
  if (it != comp.end()) return it->second;
  return IntMatrix::zero(cod.group(n).num_generators(), dom.group(n).num_generators());
}

void ChainMap::validate() const {
  long a = std::min(dom.lo(), cod.lo()), b = std::max(dom.hi(), cod.hi());
  if (dom.groups.empty() && cod.groups.empty()) return;
  for (long n = a; n <= b + 1; ++n) {
    GroupMap f{dom.group(n), cod.group(n), comp_at(n)};
    if (!f.well_defined())
      throw RelationViolation("chain map not well defined in degree " + std::to_string(n));
    IntMatrix lhs = cod.diff_at(n).mul(comp_at(n));
    IntMatrix rhs = comp_at(n - 1).mul(dom.diff_at(n));
    IntMatrix d = lhs.sub(rhs);
    FGAbelianGroup tgt = cod.group(n - 1);
    for (long j = 0; j < d.cols; ++j)
      if (!tgt.element_is_zero(d.column(j)))
        throw RelationViolation("chain map does not commute with d in degree " +
                                std::to_string(n));
  }
}

ChainMap chain_identity(const ChainComplex& c) {
  ChainMap f{c, c, {}};
  for (const auto& [n, g] : c.groups) f.comp[n] = IntMatrix::identity(g.num_generators());
  return f;
}

ChainMap chain_zero_map(const ChainComplex& dom, const ChainComplex& cod) {
  return ChainMap{dom, cod, {}};
}

ChainMap scalar_map(const ChainComplex& c, const Int& s) {
  ChainMap f = chain_identity(c);
  for (auto& [n, m] : f.comp) m = m.scaled(s);
  return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap r{f.dom, g.cod, {}};
  long a = std::min(f.dom.lo(), g.cod.lo()), b = std::max(f.dom.hi(), g.cod.hi());
  if (f.dom.groups.empty() && g.cod.groups.empty()) return r;
  for (long n = a; n <= b; ++n) {
    IntMatrix m = g.comp_at(n).mul(f.comp_at(n));
    if (!m.is_zero()) r.comp[n] = m;
  }
  return r;
}

ChainMap shift_map(const ChainMap& f, long s) {
  ChainMap r{shift(f.dom, s), shift(f.cod, s), {}};
  for (const auto& [n, m] : f.comp) r.comp[n + s] = m;
  return r;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  ChainComplex r{a.ring, {}, {}};
  long lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  if (a.groups.empty() && b.groups.empty()) return r;
  for (long n = lo; n <= hi; ++n) {
    FGAbelianGroup g = FGAbelianGroup::direct_sum(a.group(n), b.group(n));
    if (g.num_generators() > 0) r.groups[n] = std::move(g);
  }
  for (long n = lo; n <= hi + 1; ++n) {
    IntMatrix top = hstack_m(
        a.diff_at(n), IntMatrix::zero(a.group(n - 1).num_generators(),
                                      b.group(n).num_generators()));
    IntMatrix bot = hstack_m(
        IntMatrix::zero(b.group(n - 1).num_generators(), a.group(n).num_generators()),
        b.diff_at(n));
    IntMatrix d = vstack_m(top, bot);
    if (!d.is_zero()) r.diff[n] = d;
  }
  return r;
}

ChainMap sum_map(const ChainMap& f, const ChainMap& g) {
  ChainMap r{direct_sum(f.dom, g.dom), f.cod, {}};
  long lo = std::min(f.dom.lo(), g.dom.lo()), hi = std::max(f.dom.hi(), g.dom.hi());
  if (f.dom.groups.empty() && g.dom.groups.empty()) return r;
  for (long n = lo; n <= hi; ++n) {
    IntMatrix m = hstack_m(f.comp_at(n), g.comp_at(n));
    if (!m.is_zero()) r.comp[n] = m;
  }
  return r;
}

ConeData cone(const ChainMap& f) {
  const ChainComplex& x = f.dom;
  const ChainComplex& y = f.cod;
  ChainComplex c{x.ring, {}, {}};
  long lo = std::min(x.lo() + 1, y.lo()), hi = std::max(x.hi() + 1, y.hi());
  ChainMap incl{y, c, {}}, proj{c, shift(x, 1), {}};
  if (x.groups.empty() && y.groups.empty()) {
    incl.cod = c;
    proj.dom = c;
    return {c, incl, proj};
  }
  for (long n = lo; n <= hi; ++n) {
    FGAbelianGroup g = FGAbelianGroup::direct_sum(x.group(n - 1), y.group(n));
    if (g.num_generators() > 0) c.groups[n] = std::move(g);
  }
  for (long n = lo; n <= hi + 1; ++n) {
    long rx = x.group(n - 2).num_generators(), ry = y.group(n - 1).num_generators();
    long cx = x.group(n - 1).num_generators(), cy = y.group(n).num_generators();
    IntMatrix top = hstack_m(x.diff_at(n - 1).scaled(-1), IntMatrix::zero(rx, cy));
    IntMatrix bot = hstack_m(f.comp_at(n - 1), y.diff_at(n));
    (void)cx;
    IntMatrix d = vstack_m(top, bot);
    if (!d.is_zero()) c.diff[n] = d;
  }
  for (long n = lo; n <= hi; ++n) {
    long cx = x.group(n - 1).num_generators(), cy = y.group(n).num_generators();
    if (cy > 0 && cx + cy > 0)
      incl.comp[n] = vstack_m(IntMatrix::zero(cx, cy), IntMatrix::identity(cy));
    if (cx > 0) proj.comp[n] = hstack_m(IntMatrix::identity(cx), IntMatrix::zero(cx, cy));
  }
  incl.cod = c;
  proj.dom = c;
  return {c, incl, proj};
}

FiberData fiber(const ChainMap& f) {
  const ChainComplex& x = f.dom;
  const ChainComplex& y = f.cod;
  ChainComplex c{x.ring, {}, {}};
  ChainMap proj{c, x, {}};
  if (x.groups.empty() && y.groups.empty()) return {c, proj};
  long lo = std::min(x.lo(), y.lo() - 1), hi = std::max(x.hi(), y.hi() - 1);
  for (long n = lo; n <= hi; ++n) {
    FGAbelianGroup g = FGAbelianGroup::direct_sum(x.group(n), y.group(n + 1));
    if (g.num_generators() > 0) c.groups[n] = std::move(g);
  }
  for (long n = lo; n <= hi + 1; ++n) {
    long rx = x.group(n - 1).num_generators(), ry = y.group(n).num_generators();
    long cy = y.group(n + 1).num_generators();
    IntMatrix top = hstack_m(x.diff_at(n), IntMatrix::zero(rx, cy));
    IntMatrix bot = hstack_m(f.comp_at(n).scaled(-1), y.diff_at(n + 1).scaled(-1));
    (void)ry;
    IntMatrix d = vstack_m(top, bot);
    if (!d.is_zero()) c.diff[n] = d;
  }
  for (long n = lo; n <= hi; ++n) {
    long cx = x.group(n).num_generators(), cy = y.group(n + 1).num_generators();
    if (cx > 0) proj.comp[n] = hstack_m(IntMatrix::identity(cx), IntMatrix::zero(cx, cy));
  }
  proj.dom = c;
  return {c, proj};
}

ChainComplex cokernel_complex(const ChainMap& f) {
  ChainComplex r{f.cod.ring, {}, {}};
  for (const auto& [n, g] : f.cod.groups)
    r.groups[n] = FGAbelianGroup(vstack_m(g.relations, f.comp_at(n).transpose()));
  r.diff = f.cod.diff;
  return r;
}

ChainMap cone_map(const ChainMap& f, const ChainMap& fp, const ChainMap& a,
                  const ChainMap& b) {
  ConeData c1 = cone(f), c2 = cone(fp);
  ChainMap r{c1.cx, c2.cx, {}};
  long lo = std::min(c1.cx.lo(), c2.cx.lo()), hi = std::max(c1.cx.hi(), c2.cx.hi());
  if (c1.cx.groups.empty() && c2.cx.groups.empty()) return r;
  for (long n = lo; n <= hi; ++n) {
    long rx = fp.dom.group(n - 1).num_generators(), ry = fp.cod.group(n).num_generators();
    long cx = f.dom.group(n - 1).num_generators(), cy = f.cod.group(n).num_generators();
    IntMatrix top = hstack_m(a.comp_at(n - 1), IntMatrix::zero(rx, cy));
    IntMatrix bot = hstack_m(IntMatrix::zero(ry, cx), b.comp_at(n));
    IntMatrix m = vstack_m(top, bot);
    if (!m.is_zero()) r.comp[n] = m;
  }
  return r;
}

namespace {

struct TensorLayout {
  // blocks (i, j) with i + j = n, in increasing i, with generator offsets
  std::vector<std::array<long, 3>> blocks;  // {i, offset, block_size}
  long total = 0;
};

TensorLayout layout_at(const ChainComplex& a, const ChainComplex& b, long n) {
  TensorLayout l;
  if (a.groups.empty() || b.groups.empty()) return l;
  for (long i = a.lo(); i <= a.hi(); ++i) {
    long j = n - i;
    long sz = a.group(i).num_generators() * b.group(j).num_generators();
    if (sz > 0) {
      l.blocks.push_back({i, l.total, sz});
      l.total += sz;
    }
  }
  return l;
}

}  // namespace

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
  if (!(a.ring == b.ring)) throw RelationViolation("tensor factors over different rings");
  ChainComplex r{a.ring, {}, {}};
  if (a.groups.empty() || b.groups.empty()) return r;
  long lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
  for (long n = lo; n <= hi; ++n) {
    TensorLayout l = layout_at(a, b, n);
    if (l.total == 0) continue;
    FGAbelianGroup g = FGAbelianGroup::zero();
    bool first = true;
    for (const auto& blk : l.blocks) {
      FGAbelianGroup piece = tensor_group(a.group(blk[0]), b.group(n - blk[0]));
      g = first ? piece : FGAbelianGroup::direct_sum(g, piece);
      first = false;
    }
    r.groups[n] = std::move(g);
  }
  for (long n = lo; n <= hi + 1; ++n) {
    TensorLayout src = layout_at(a, b, n), dst = layout_at(a, b, n - 1);
    if (src.total == 0 || dst.total == 0) continue;
    IntMatrix d = IntMatrix::zero(dst.total, src.total);
    auto dst_offset = [&](long i) -> long {
      for (const auto& blk : dst.blocks)
        if (blk[0] == i) return blk[1];
      return -1;
    };
    for (const auto& blk : src.blocks) {
      long i = blk[0], j = n - i;
      long na = a.group(i).num_generators(), nb = b.group(j).num_generators();
      // d_A (x) id into block (i-1, j)
      long o1 = dst_offset(i - 1);
      if (o1 >= 0) {
        IntMatrix m = kron(a.diff_at(i), IntMatrix::identity(nb));
        for (long rr = 0; rr < m.rows; ++rr)
          for (long cc = 0; cc < m.cols; ++cc)
            if (m.at(rr, cc) != 0) d.at(o1 + rr, blk[1] + cc) = m.at(rr, cc);
      }
      // (-1)^i id (x) d_B into block (i, j-1)
      long o2 = dst_offset(i);
      if (o2 >= 0) {
        Int sign = (i % 2 == 0) ? 1 : -1;
        IntMatrix m = kron(IntMatrix::identity(na), b.diff_at(j)).scaled(sign);
        for (long rr = 0; rr < m.rows; ++rr)
          for (long cc = 0; cc < m.cols; ++cc)
            if (m.at(rr, cc) != 0) d.at(o2 + rr, blk[1] + cc) = m.at(rr, cc);
      }
    }
    if (!d.is_zero()) r.diff[n] = d;
  }
  return r;
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
  ChainComplex dom = tensor(f.dom, g.dom), cod = tensor(f.cod, g.cod);
  ChainMap r{dom, cod, {}};
  if (dom.groups.empty() || cod.groups.empty()) return r;
  for (long n = dom.lo(); n <= dom.hi(); ++n) {
    TensorLayout src = layout_at(f.dom, g.dom, n), dst = layout_at(f.cod, g.cod, n);
    if (src.total == 0 || dst.total == 0) continue;
    IntMatrix m = IntMatrix::zero(dst.total, src.total);
    auto dst_offset = [&](long i) -> long {
      for (const auto& blk : dst.blocks)
        if (blk[0] == i) return blk[1];
      return -1;
    };
    for (const auto& blk : src.blocks) {
      long i = blk[0], j = n - i;
      long o = dst_offset(i);
      if (o < 0) continue;
      IntMatrix k = kron(f.comp_at(i), g.comp_at(j));
      for (long rr = 0; rr < k.rows; ++rr)
        for (long cc = 0; cc < k.cols; ++cc)
          if (k.at(rr, cc) != 0) m.at(o + rr, blk[1] + cc) = k.at(rr, cc);
    }
    if (!m.is_zero()) r.comp[n] = m;
  }
  return r;
}

TruncationData truncate_good(const ChainComplex& c, long k) {
  ChainComplex t{c.ring, {}, {}};
  ChainMap incl{t, c, {}};
  GroupMap dk{c.group(k), c.group(k - 1), c.diff_at(k)};
  auto kc = kernel_cokernel(dk);
  for (const auto& [n, g] : c.groups)
    if (n > k) t.groups[n] = g;
  if (kc.ker.num_generators() > 0) t.groups[k] = kc.ker;
  for (const auto& [n, m] : c.diff)
    if (n > k + 1) t.diff[n] = m;
  auto e = express_in_generators(kc.ker_gens, c.group(k), c.diff_at(k + 1));
  if (!e) throw RelationViolation("boundaries at the truncation degree are not cycles");
  if (!e->is_zero()) t.diff[k + 1] = *e;
  for (const auto& [n, g] : t.groups)
    incl.comp[n] = (n == k) ? kc.ker_gens : IntMatrix::identity(g.num_generators());
  incl.dom = t;
  return {t, incl, kc.ker_gens};
}

ChainMap truncate_good_map(const ChainMap& f, long k) {
  TruncationData td = truncate_good(f.dom, k), tc = truncate_good(f.cod, k);
  ChainMap r{td.cx, tc.cx, {}};
  for (const auto& [n, g] : td.cx.groups) {
    if (n > k) {
      IntMatrix m = f.comp_at(n);
      if (!m.is_zero()) r.comp[n] = m;
    } else {
      auto e = express_in_generators(tc.cyc_gens, f.cod.group(k),
                                     f.comp_at(k).mul(td.cyc_gens));
      if (!e) throw RelationViolation("map does not preserve cycles at the truncation degree");
      if (!e->is_zero()) r.comp[k] = *e;
    }
  }
  return r;
}

}  // namespace cartier
