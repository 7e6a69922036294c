#pragma once
#include "cartier/chain.hpp"

namespace cartier {

// Decreasing filtration F^i indexed by weights in a finite window
// [w_min, w_max]; above w_max every level is zero, below w_min the declared
// policy applies (constant repeats F^{w_min}, zero vanishes).
enum class BelowPolicy { Constant, Zero };

struct FilteredComplex {
  CoeffRing ring;
  long w_min = 0, w_max = 0;
  BelowPolicy policy = BelowPolicy::Constant;
  std::map<long, ChainComplex> level;  // weights w_min..w_max
  std::map<long, ChainMap> trans;      // t_i : F^{i+1} -> F^i, w_min <= i < w_max

  ChainComplex level_at(long i) const;  // window semantics for all i
  ChainMap trans_at(long i) const;
  void validate() const;
};

struct FilteredMap {
  FilteredComplex dom, cod;
  std::map<long, ChainMap> comp;  // per weight inside the union of windows

  ChainMap comp_at(long i) const;
  void validate() const;  // levelwise chain maps + commutation with transitions
};

// F^i = C for i <= w, zero above; the weight-w insertion with constant tail
FilteredComplex insert_weight(long w, const ChainComplex& c);
// discrete filtered object of a graded group: level i is M_i concentrated in
// degree i with zero transitions
FilteredComplex discrete_filtered(const CoeffRing& r, const GradedAbelianGroup& m);

ChainComplex graded_piece(const FilteredComplex& x, long i);  // cofiber of t_i
ChainComplex underlying(const FilteredComplex& x);
bool is_complete(const FilteredComplex& x);

FilteredComplex day_tensor(const FilteredComplex& x, const FilteredComplex& y,
                           long max_window = 64);

FilteredComplex truncate_postnikov(const FilteredComplex& x, long k);
FilteredComplex truncate_neutral(const FilteredComplex& x, long k);
FilteredComplex double_speed_whitehead(const ChainComplex& c);

GradedAbelianGroup heart_pi(const FilteredComplex& x);  // NotInHeart if not

FilteredMap filtered_identity(const FilteredComplex& x);
FilteredMap filtered_scalar(const FilteredComplex& x, const Int& s);

FilteredComplex fiber_filtered(const FilteredMap& f);
FilteredComplex cofiber_filtered(const FilteredMap& f);
FilteredComplex pullback(const FilteredMap& f, const FilteredMap& g);

struct BigradedHomotopyTable {
  // (degree, weight) -> group, nonzero entries only
  std::map<std::pair<long, long>, FGAbelianGroup> entries;

  const FGAbelianGroup& at(long deg, long weight) const;
  bool same_invariants(const BigradedHomotopyTable& o) const;
  std::string describe() const;
};

BigradedHomotopyTable homotopy_table(const FilteredComplex& x, long deg_lo, long deg_hi);

// the v-line: levels F^i = span{ v^j : j_lo <= j <= j_hi, j <= -i } with v^j
// in degree -2j and zero differentials
FilteredComplex polynomial_v_filtered(const CoeffRing& r, long j_lo, long j_hi,
                                      long w_min, long w_max);

BigradedHomotopyTable rational_tc_sphere(long n_weight_bound);
BigradedHomotopyTable cyclic_fixed_points_via_n_series(long n, long deg_bound);

}  // namespace cartier
