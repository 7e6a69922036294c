#include "cartier/filtered.hpp"

#include <algorithm>
#include <sstream>

#include "cartier/errors.hpp"

namespace cartier {

namespace {

// block-diagonal map A (+) B -> A' (+) B'
ChainMap dsum_map(const ChainMap& a, const ChainMap& b) {
  ChainMap r{direct_sum(a.dom, b.dom), direct_sum(a.cod, b.cod), {}};
  long lo = std::min(r.dom.lo(), r.cod.lo()), hi = std::max(r.dom.hi(), r.cod.hi());
  if (r.dom.groups.empty() && r.cod.groups.empty()) return r;
  for (long n = lo; n <= hi; ++n) {
    IntMatrix top = a.comp_at(n).hstack(
        IntMatrix::zero(a.cod.group(n).num_generators(), b.dom.group(n).num_generators()));
    IntMatrix bot = IntMatrix::zero(b.cod.group(n).num_generators(),
                                    a.dom.group(n).num_generators())
                        .hstack(b.comp_at(n));
    IntMatrix m = top.vstack(bot);
    if (!m.is_zero()) r.comp[n] = m;
  }
  return r;
}

ChainMap map_scaled(const ChainMap& f, const Int& s) {
  ChainMap r = f;
  for (auto& [n, m] : r.comp) m = m.scaled(s);
  return r;
}

ChainMap map_sub(const ChainMap& f, const ChainMap& g) {
  ChainMap r{f.dom, f.cod, {}};
  long lo = std::min(f.dom.lo(), f.cod.lo()), hi = std::max(f.dom.hi(), f.cod.hi());
  if (f.dom.groups.empty() && f.cod.groups.empty()) return r;
  for (long n = lo; n <= hi; ++n) {
    IntMatrix m = f.comp_at(n).sub(g.comp_at(n));
    if (!m.is_zero()) r.comp[n] = m;
  }
  return r;
}

bool maps_equal_mod(const ChainMap& f, const ChainMap& g) {
  long lo = std::min(f.dom.lo(), f.cod.lo()), hi = std::max(f.dom.hi(), f.cod.hi());
  if (f.dom.groups.empty() && f.cod.groups.empty()) return true;
  for (long n = lo; n <= hi; ++n) {
    IntMatrix d = f.comp_at(n).sub(g.comp_at(n));
    FGAbelianGroup tgt = f.cod.group(n);
    for (long j = 0; j < d.cols; ++j)
      if (!tgt.element_is_zero(d.column(j))) return false;
  }
  return true;
}

// induced map fiber(f) -> fiber(fp) of a commuting square (a, b)
ChainMap fiber_map(const ChainMap& f, const ChainMap& fp, const ChainMap& a,
                   const ChainMap& b) {
  FiberData f1 = fiber(f), f2 = fiber(fp);
  ChainMap r{f1.cx, f2.cx, {}};
  long lo = std::min(f1.cx.lo(), f2.cx.lo()), hi = std::max(f1.cx.hi(), f2.cx.hi());
  if (f1.cx.groups.empty() && f2.cx.groups.empty()) return r;
  for (long n = lo; n <= hi; ++n) {
    long rx = fp.dom.group(n).num_generators(), ry = fp.cod.group(n + 1).num_generators();
    long cx = f.dom.group(n).num_generators(), cy = f.cod.group(n + 1).num_generators();
    IntMatrix top = a.comp_at(n).hstack(IntMatrix::zero(rx, cy));
    IntMatrix bot = IntMatrix::zero(ry, cx).hstack(b.comp_at(n + 1));
    IntMatrix m = top.vstack(bot);
    if (!m.is_zero()) r.comp[n] = m;
  }
  return r;
}

// inclusion of nested good truncations tau_{>=a} C -> tau_{>=b} C, a >= b
ChainMap nested_trunc_incl(const ChainComplex& c, long a, long b) {
  TruncationData ta = truncate_good(c, a), tb = truncate_good(c, b);
  if (a == b) return chain_identity(ta.cx);
  ChainMap r{ta.cx, tb.cx, {}};
  for (const auto& [n, g] : ta.cx.groups)
    r.comp[n] = (n == a) ? ta.cyc_gens : IntMatrix::identity(g.num_generators());
  return r;
}

}  // namespace

ChainComplex FilteredComplex::level_at(long i) const {
  if (i > w_max) return zero_complex(ring);
  if (i < w_min)
    return policy == BelowPolicy::Constant ? level_at(w_min) : zero_complex(ring);
  auto it = level.find(i);
  return it == level.end() ? zero_complex(ring) : it->second;
}

ChainMap FilteredComplex::trans_at(long i) const {
  if (i >= w_min && i < w_max) {
    auto it = trans.find(i);
    if (it != trans.end()) return it->second;
    return chain_zero_map(level_at(i + 1), level_at(i));
  }
  if (i < w_min && policy == BelowPolicy::Constant) return chain_identity(level_at(w_min));
  return chain_zero_map(level_at(i + 1), level_at(i));
}

void FilteredComplex::validate() const {
  if (w_min > w_max) throw WindowOverflow("empty weight window");
  for (const auto& [i, c] : level) {
    if (i < w_min || i > w_max)
      throw WindowOverflow("level stored outside the window at weight " + std::to_string(i));
    if (!(c.ring == ring)) throw RelationViolation("level ring mismatch");
    c.validate();
  }
  for (const auto& [i, t] : trans) {
    if (i < w_min || i >= w_max)
      throw WindowOverflow("transition stored outside the window at weight " +
                           std::to_string(i));
    t.validate();
    ChainComplex d = level_at(i + 1), c = level_at(i);
    for (long n = std::min(d.lo(), c.lo()); n <= std::max(d.hi(), c.hi()); ++n)
      if (t.dom.group(n).num_generators() != d.group(n).num_generators() ||
          t.cod.group(n).num_generators() != c.group(n).num_generators())
        throw RelationViolation("transition endpoints do not match levels at weight " +
                                std::to_string(i));
  }
}

ChainMap FilteredMap::comp_at(long i) const {
  auto it = comp.find(i);
  if (it != comp.end()) return it->second;
  ChainComplex d = dom.level_at(i), c = cod.level_at(i);
  if (!comp.empty() && i < comp.begin()->first) {
    // constant tail: reuse the lowest stored square when shapes agree
    const ChainMap& low = comp.begin()->second;
    bool match = true;
    long lo = std::min(d.lo(), c.lo()), hi = std::max(d.hi(), c.hi());
    for (long n = lo; n <= hi && match; ++n)
      match = d.group(n).num_generators() == low.dom.group(n).num_generators() &&
              c.group(n).num_generators() == low.cod.group(n).num_generators();
    if (match && !(d.groups.empty() && c.groups.empty()))
      return ChainMap{d, c, low.comp};
  }
  return chain_zero_map(d, c);
}

void FilteredMap::validate() const {
  long lo = std::min(dom.w_min, cod.w_min) - 1, hi = std::max(dom.w_max, cod.w_max);
  for (long i = lo; i <= hi; ++i) {
    comp_at(i).validate();
    ChainMap lhs = compose(comp_at(i), dom.trans_at(i));
    ChainMap rhs = compose(cod.trans_at(i), comp_at(i + 1));
    if (!maps_equal_mod(lhs, rhs))
      throw RelationViolation("filtered map does not commute with transitions at weight " +
                              std::to_string(i));
  }
}

FilteredComplex insert_weight(long w, const ChainComplex& c) {
  FilteredComplex f{c.ring, w, w, BelowPolicy::Constant, {}, {}};
  f.level[w] = c;
  return f;
}

FilteredComplex discrete_filtered(const CoeffRing& r, const GradedAbelianGroup& m) {
  FilteredComplex f{r, 0, 0, BelowPolicy::Zero, {}, {}};
  if (m.parts.empty()) {
    f.level[0] = zero_complex(r);
    return f;
  }
  f.w_min = m.parts.begin()->first;
  f.w_max = m.parts.rbegin()->first;
  for (const auto& [i, g] : m.parts) f.level[i] = concentrated(r, i, g);
  return f;
}

ChainComplex graded_piece(const FilteredComplex& x, long i) { return cone(x.trans_at(i)).cx; }

ChainComplex underlying(const FilteredComplex& x) {
  return x.policy == BelowPolicy::Constant ? x.level_at(x.w_min) : zero_complex(x.ring);
}

bool is_complete(const FilteredComplex& x) {
  // the tail limit along the below-window policy: zero tails vanish, constant
  // tails contribute the bottom level
  if (x.policy == BelowPolicy::Zero) return true;
  return is_acyclic(x.level_at(x.w_min));
}

FilteredComplex day_tensor(const FilteredComplex& x, const FilteredComplex& y,
                           long max_window) {
  if (!(x.ring == y.ring)) throw RelationViolation("day tensor over different rings");
  long w_min = x.w_min + y.w_min, w_max = x.w_max + y.w_max;
  if (w_max - w_min + 1 > max_window)
    throw WindowOverflow("day tensor window exceeds bound " + std::to_string(max_window));
  FilteredComplex r{x.ring, w_min, w_max, BelowPolicy::Constant, {}, {}};

  // level n: coequalizer over the staircase i + j = n of F^i X (x) F^j Y
  struct Staircase {
    std::vector<ChainComplex> corners;           // T_i, i = i_lo .. i_hi
    std::vector<ChainComplex> sources;           // S_i over (i, i+1)
    ChainComplex corner_sum, source_sum;
    ChainMap difference;                          // source_sum -> corner_sum
    long i_lo = 0, i_hi = 0;
  };
  auto staircase_at = [&](long n) {
    Staircase s;
    s.i_lo = n - y.w_max;
    s.i_hi = x.w_max;
    s.corner_sum = zero_complex(x.ring);
    s.source_sum = zero_complex(x.ring);
    for (long i = s.i_lo; i <= s.i_hi; ++i) {
      s.corners.push_back(tensor(x.level_at(i), y.level_at(n - i)));
      s.corner_sum = direct_sum(s.corner_sum, s.corners.back());
    }
    for (long i = s.i_lo; i < s.i_hi; ++i) {
      s.sources.push_back(tensor(x.level_at(i + 1), y.level_at(n - i)));
      s.source_sum = direct_sum(s.source_sum, s.sources.back());
    }
    // assemble the two staircase comparison maps blockwise
    ChainMap d{s.source_sum, s.corner_sum, {}};
    long lo = std::min(s.source_sum.lo(), s.corner_sum.lo());
    long hi = std::max(s.source_sum.hi(), s.corner_sum.hi());
    if (!(s.source_sum.groups.empty() && s.corner_sum.groups.empty())) {
      for (long deg = lo; deg <= hi; ++deg) {
        IntMatrix m = IntMatrix::zero(s.corner_sum.group(deg).num_generators(),
                                      s.source_sum.group(deg).num_generators());
        long coff = 0;
        std::vector<long> corner_off;
        for (const auto& t : s.corners) {
          corner_off.push_back(coff);
          coff += t.group(deg).num_generators();
        }
        long soff = 0;
        for (long bi = 0; bi + 1 <= static_cast<long>(s.sources.size()); ++bi) {
          long i = s.i_lo + bi;
          ChainMap m1 = tensor_map(x.trans_at(i), chain_identity(y.level_at(n - i)));
          ChainMap m2 = tensor_map(chain_identity(x.level_at(i + 1)), y.trans_at(n - i - 1));
          IntMatrix a = m1.comp_at(deg), b = m2.comp_at(deg);
          for (long rr = 0; rr < a.rows; ++rr)
            for (long cc = 0; cc < a.cols; ++cc)
              if (a.at(rr, cc) != 0)
                m.at(corner_off[static_cast<size_t>(bi)] + rr, soff + cc) += a.at(rr, cc);
          for (long rr = 0; rr < b.rows; ++rr)
            for (long cc = 0; cc < b.cols; ++cc)
              if (b.at(rr, cc) != 0)
                m.at(corner_off[static_cast<size_t>(bi) + 1] + rr, soff + cc) -= b.at(rr, cc);
          soff += s.sources[static_cast<size_t>(bi)].group(deg).num_generators();
        }
        if (!m.is_zero()) d.comp[deg] = m;
      }
    }
    s.difference = std::move(d);
    return s;
  };

  std::map<long, Staircase> stair;
  for (long n = w_min; n <= w_max; ++n) {
    stair[n] = staircase_at(n);
    r.level[n] = cokernel_complex(stair[n].difference);
  }
  // transitions: blockwise id (x) t_Y on corner sums, passed to the quotients
  for (long n = w_min; n < w_max; ++n) {
    const Staircase& hiS = stair[n + 1];
    const Staircase& loS = stair[n];
    ChainMap t{r.level[n + 1], r.level[n], {}};
    long lo = std::min(t.dom.lo(), t.cod.lo()), hi = std::max(t.dom.hi(), t.cod.hi());
    if (!(t.dom.groups.empty() && t.cod.groups.empty())) {
      for (long deg = lo; deg <= hi; ++deg) {
        IntMatrix m = IntMatrix::zero(t.cod.group(deg).num_generators(),
                                      t.dom.group(deg).num_generators());
        long doff = 0;
        for (long bi = 0; bi < static_cast<long>(hiS.corners.size()); ++bi) {
          long i = hiS.i_lo + bi;
          long ci = i - loS.i_lo;  // block index downstairs
          ChainMap tm = tensor_map(chain_identity(x.level_at(i)), y.trans_at(n - i));
          IntMatrix a = tm.comp_at(deg);
          long coff = 0;
          for (long bj = 0; bj < ci; ++bj)
            coff += loS.corners[static_cast<size_t>(bj)].group(deg).num_generators();
          for (long rr = 0; rr < a.rows; ++rr)
            for (long cc = 0; cc < a.cols; ++cc)
              if (a.at(rr, cc) != 0) m.at(coff + rr, doff + cc) = a.at(rr, cc);
          doff += hiS.corners[static_cast<size_t>(bi)].group(deg).num_generators();
        }
        if (!m.is_zero()) t.comp[deg] = m;
      }
    }
    r.trans[n] = std::move(t);
  }
  return r;
}

FilteredComplex truncate_postnikov(const FilteredComplex& x, long k) {
  long w_min = x.w_min;
  if (x.policy == BelowPolicy::Constant) {
    ChainComplex base = x.level_at(x.w_min);
    if (!base.groups.empty()) w_min = std::min(w_min, base.lo() - k);
  }
  FilteredComplex r{x.ring, w_min, x.w_max, x.policy, {}, {}};
  for (long i = w_min; i <= x.w_max; ++i)
    r.level[i] = truncate_good(x.level_at(i), i + k).cx;
  for (long i = w_min; i < x.w_max; ++i) {
    ChainMap step = truncate_good_map(x.trans_at(i), i + k);
    ChainMap nest = nested_trunc_incl(x.level_at(i + 1), i + 1 + k, i + k);
    r.trans[i] = compose(step, nest);
  }
  return r;
}

FilteredComplex truncate_neutral(const FilteredComplex& x, long k) {
  FilteredComplex r{x.ring, x.w_min, x.w_max, x.policy, {}, {}};
  for (long i = x.w_min; i <= x.w_max; ++i) r.level[i] = truncate_good(x.level_at(i), k).cx;
  for (long i = x.w_min; i < x.w_max; ++i) r.trans[i] = truncate_good_map(x.trans_at(i), k);
  return r;
}

FilteredComplex double_speed_whitehead(const ChainComplex& c) {
  if (c.groups.empty()) {
    FilteredComplex r{c.ring, 0, 0, BelowPolicy::Zero, {}, {}};
    r.level[0] = c;
    return r;
  }
  auto fdiv2 = [](long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); };
  long w_max = fdiv2(c.hi());
  long w_min = std::min<long>(fdiv2(c.lo() + 1) - 1, w_max);  // tau_{>=2 w_min} = c
  FilteredComplex r{c.ring, w_min, w_max, BelowPolicy::Constant, {}, {}};
  for (long i = w_min; i <= w_max; ++i) r.level[i] = truncate_good(c, 2 * i).cx;
  for (long i = w_min; i < w_max; ++i) r.trans[i] = nested_trunc_incl(c, 2 * i + 2, 2 * i);
  return r;
}

GradedAbelianGroup heart_pi(const FilteredComplex& x) {
  if (x.policy == BelowPolicy::Constant && !is_acyclic(x.level_at(x.w_min)))
    throw NotInHeart("constant tail is not acyclic");
  GradedAbelianGroup g;
  for (long i = x.w_min; i <= x.w_max; ++i) {
    for (const auto& [n, h] : homology_all(x.level_at(i))) {
      if (n != i)
        throw NotInHeart("homotopy in degree " + std::to_string(n) + " at weight " +
                         std::to_string(i));
      g.set(i, h);
    }
  }
  return g;
}

FilteredMap filtered_identity(const FilteredComplex& x) {
  FilteredMap f{x, x, {}};
  for (long i = x.w_min; i <= x.w_max; ++i) f.comp[i] = chain_identity(x.level_at(i));
  return f;
}

FilteredMap filtered_scalar(const FilteredComplex& x, const Int& s) {
  FilteredMap f{x, x, {}};
  for (long i = x.w_min; i <= x.w_max; ++i) f.comp[i] = scalar_map(x.level_at(i), s);
  return f;
}

FilteredComplex fiber_filtered(const FilteredMap& f) {
  long w_min = std::min(f.dom.w_min, f.cod.w_min) - 1;
  long w_max = std::max(f.dom.w_max, f.cod.w_max);
  FilteredComplex r{f.dom.ring, w_min, w_max, BelowPolicy::Constant, {}, {}};
  for (long i = w_min; i <= w_max; ++i) r.level[i] = fiber(f.comp_at(i)).cx;
  for (long i = w_min; i < w_max; ++i)
    r.trans[i] = fiber_map(f.comp_at(i + 1), f.comp_at(i), f.dom.trans_at(i),
                           f.cod.trans_at(i));
  return r;
}

FilteredComplex cofiber_filtered(const FilteredMap& f) {
  long w_min = std::min(f.dom.w_min, f.cod.w_min) - 1;
  long w_max = std::max(f.dom.w_max, f.cod.w_max);
  FilteredComplex r{f.dom.ring, w_min, w_max, BelowPolicy::Constant, {}, {}};
  for (long i = w_min; i <= w_max; ++i) r.level[i] = cone(f.comp_at(i)).cx;
  for (long i = w_min; i < w_max; ++i)
    r.trans[i] = cone_map(f.comp_at(i + 1), f.comp_at(i), f.dom.trans_at(i),
                          f.cod.trans_at(i));
  return r;
}

FilteredComplex pullback(const FilteredMap& f, const FilteredMap& g) {
  long w_min = std::min({f.dom.w_min, g.dom.w_min, f.cod.w_min}) - 1;
  long w_max = std::max({f.dom.w_max, g.dom.w_max, f.cod.w_max});
  // sum object X (+) Y with the difference map to the common target
  FilteredComplex s{f.dom.ring, w_min, w_max, BelowPolicy::Constant, {}, {}};
  FilteredMap h{s, f.cod, {}};
  for (long i = w_min; i <= w_max; ++i) {
    s.level[i] = direct_sum(f.dom.level_at(i), g.dom.level_at(i));
    ChainMap diff = sum_map(f.comp_at(i), map_scaled(g.comp_at(i), -1));
    diff.dom = s.level[i];
    h.comp[i] = std::move(diff);
  }
  for (long i = w_min; i < w_max; ++i)
    s.trans[i] = dsum_map(f.dom.trans_at(i), g.dom.trans_at(i));
  h.dom = s;
  return fiber_filtered(h);
}

const FGAbelianGroup& BigradedHomotopyTable::at(long deg, long weight) const {
  static const FGAbelianGroup zero = FGAbelianGroup::zero();
  auto it = entries.find({deg, weight});
  return it == entries.end() ? zero : it->second;
}

bool BigradedHomotopyTable::same_invariants(const BigradedHomotopyTable& o) const {
  if (entries.size() != o.entries.size()) return false;
  for (const auto& [k, g] : entries) {
    auto it = o.entries.find(k);
    if (it == o.entries.end() || !g.same_invariants(it->second)) return false;
  }
  return true;
}

std::string BigradedHomotopyTable::describe() const {
  std::ostringstream os;
  for (const auto& [k, g] : entries)
    os << "(" << k.first << "," << k.second << "): " << g.describe() << "\n";
  return os.str();
}

BigradedHomotopyTable homotopy_table(const FilteredComplex& x, long deg_lo, long deg_hi) {
  BigradedHomotopyTable t;
  for (long i = x.w_min; i <= x.w_max; ++i) {
    ChainComplex c = x.level_at(i);
    for (long n = deg_lo; n <= deg_hi; ++n) {
      FGAbelianGroup h = homology(c, n);
      if (!h.is_zero()) t.entries[{n, i}] = std::move(h);
    }
  }
  return t;
}

FilteredComplex polynomial_v_filtered(const CoeffRing& r, long j_lo, long j_hi,
                                      long w_min, long w_max) {
  FilteredComplex f{r, w_min, w_max, BelowPolicy::Constant, {}, {}};
  auto level = [&](long i) {
    ChainComplex c{r, {}, {}};
    for (long j = j_lo; j <= std::min(j_hi, -i); ++j) c.groups[-2 * j] = coeff_group(r, 1);
    return c;
  };
  for (long i = w_min; i <= w_max; ++i) f.level[i] = level(i);
  for (long i = w_min; i < w_max; ++i) {
    ChainMap t{f.level[i + 1], f.level[i], {}};
    for (const auto& [n, g] : f.level[i + 1].groups) t.comp[n] = IntMatrix::identity(1);
    f.trans[i] = std::move(t);
  }
  return f;
}

BigradedHomotopyTable rational_tc_sphere(long n_weight_bound) {
  long N = n_weight_bound;
  if (N < 1) throw WindowOverflow("weight bound must be >= 1");
  CoeffRing q = CoeffRing::q();
  // top-left corner: Q (+) Q[-1] inserted at weight 0
  ChainComplex xc{q, {}, {}};
  xc.groups[0] = coeff_group(q, 1);
  xc.groups[-1] = coeff_group(q, 1);
  FilteredComplex x = insert_weight(0, xc);
  // top-right: tau_{>=2*} Q[v] vanishes in positive weights, Q v^0 at 0
  FilteredComplex y = insert_weight(0, concentrated(q, 0, coeff_group(q, 1)));
  // bottom: the v-line of Q[v^{+-1}], Laurent exponents truncated at -(N+1)
  FilteredComplex z = polynomial_v_filtered(q, -(N + 1), 0, 0, N);

  auto corner_map = [&](const FilteredComplex& src) {
    FilteredMap m{src, z, {}};
    // v^0 generator sits in degree 0 at every weight-0 target level
    ChainMap c0{src.level_at(0), z.level_at(0), {}};
    long col = src.level_at(0).group(0).num_generators();
    long row = z.level_at(0).group(0).num_generators();
    IntMatrix mm = IntMatrix::zero(row, col);
    mm.at(row - 1, 0) = 1;  // v^0 is the last basis vector in degree 0 (j = 0)
    c0.comp[0] = mm;
    m.comp[0] = std::move(c0);
    for (long i = 1; i <= N; ++i)
      m.comp[i] = chain_zero_map(src.level_at(i), z.level_at(i));
    return m;
  };
  FilteredMap f = corner_map(x), g = corner_map(y);
  f.validate();
  g.validate();
  FilteredComplex p = pullback(f, g);
  p.validate();
  BigradedHomotopyTable full = homotopy_table(p, -2, 2 * N);
  BigradedHomotopyTable t;
  for (const auto& [k, grp] : full.entries)
    if (k.second >= 0 && k.second <= N) t.entries[k] = grp;
  return t;
}

BigradedHomotopyTable cyclic_fixed_points_via_n_series(long n, long deg_bound) {
  if (n < 1) throw NonPrime("n-series needs n >= 1");
  long M = deg_bound / 2 + 2;
  CoeffRing zr = CoeffRing::z();
  FilteredComplex e = polynomial_v_filtered(zr, 0, M, -M, 0);
  // domain of the n-series: E(1)[-2], i.e. weight i carries F^{i+1} E shifted
  FilteredComplex d{zr, -M, 0, BelowPolicy::Constant, {}, {}};
  for (long i = -M; i <= 0; ++i) d.level[i] = shift(e.level_at(i + 1), -2);
  for (long i = -M; i < 0; ++i) d.trans[i] = shift_map(e.trans_at(i + 1), -2);
  // v^j |-> n v^{j+1}, degree -2j - 2 on both sides
  FilteredMap ns{d, e, {}};
  for (long i = -M; i <= 0; ++i) {
    ChainMap c{d.level_at(i), e.level_at(i), {}};
    for (const auto& [deg, grp] : d.level_at(i).groups)
      c.comp[deg] = IntMatrix(1, 1, {Int(n)});
    ns.comp[i] = std::move(c);
  }
  ns.validate();
  FilteredComplex cof = cofiber_filtered(ns);
  BigradedHomotopyTable t;
  for (long m = 0; m <= deg_bound; ++m) {
    long w = (m + 1) / 2;
    FGAbelianGroup h = homology(cof.level_at(-w), -m);
    if (!h.is_zero()) t.entries[{-m, w}] = std::move(h);
  }
  return t;
}

}  // namespace cartier
