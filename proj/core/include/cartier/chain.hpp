#pragma once
#include <map>

#include "cartier/abelian.hpp"

namespace cartier {

// Coefficients for chain-level computations: Z, Z/m, or Q.  Everything is
// presented over Z; Z/m complexes carry the modulus in their relations and
// Q complexes are computed integrally, with torsion stripped in homology.
enum class CoeffTag { Z, ZmodM, Q };

struct CoeffRing {
  CoeffTag tag = CoeffTag::Z;
  Int modulus = 0;  // ZmodM only

  bool operator==(const CoeffRing& o) const { return tag == o.tag && modulus == o.modulus; }
  static CoeffRing z() { return {CoeffTag::Z, 0}; }
  static CoeffRing zmod(const Int& m) { return {CoeffTag::ZmodM, m}; }
  static CoeffRing q() { return {CoeffTag::Q, 0}; }
};

// (R)^rank as a presented group
FGAbelianGroup coeff_group(const CoeffRing& r, long rank);

// Homological convention: d_n : C_n -> C_{n-1}.
struct ChainComplex {
  CoeffRing ring;
  std::map<long, FGAbelianGroup> groups;  // zero outside the stored support
  std::map<long, IntMatrix> diff;         // d_n, stored for n with both ends present

  long lo() const;  // smallest degree with a stored group (0 when empty)
  long hi() const;
  FGAbelianGroup group(long n) const;
  IntMatrix diff_at(long n) const;  // correctly sized zero matrix when absent

  // d well defined, d*d = 0 in the chain groups, Q-complexes levelwise free
  void validate() const;
};

ChainComplex zero_complex(const CoeffRing& r);
// single group in one degree
ChainComplex concentrated(const CoeffRing& r, long deg, FGAbelianGroup g);

// C[s]_n = C_{n-s} with differential (-1)^s d
ChainComplex shift(const ChainComplex& c, long s);

FGAbelianGroup homology(const ChainComplex& c, long n);
std::map<long, FGAbelianGroup> homology_all(const ChainComplex& c);
bool is_acyclic(const ChainComplex& c);

struct ChainMap {
  ChainComplex dom, cod;
  std::map<long, IntMatrix> comp;

  IntMatrix comp_at(long n) const;
  void validate() const;  // levelwise well defined and commutes with d
};

ChainMap chain_identity(const ChainComplex& c);
ChainMap chain_zero_map(const ChainComplex& dom, const ChainComplex& cod);
ChainMap scalar_map(const ChainComplex& c, const Int& s);
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap shift_map(const ChainMap& f, long s);

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
// (f|g) : A (+) B -> C for maps with common target
ChainMap sum_map(const ChainMap& f, const ChainMap& g);

// cone(f)_n = X_{n-1} (+) Y_n, d(x,y) = (-dx, fx + dy)
struct ConeData {
  ChainComplex cx;
  ChainMap incl;  // Y -> cone
  ChainMap proj;  // cone -> X[1]
};
ConeData cone(const ChainMap& f);

// fiber(f)_n = X_n (+) Y_{n+1}, d(x,y) = (dx, -fx - dy)
struct FiberData {
  ChainComplex cx;
  ChainMap proj;  // fiber -> X
};
FiberData fiber(const ChainMap& f);

// levelwise cokernel with the induced differential
ChainComplex cokernel_complex(const ChainMap& f);

// induced map on cones of a commuting square (a: X -> X', b: Y -> Y' with
// b f = f' a); caller guarantees commutation, validate() re-checks it
ChainMap cone_map(const ChainMap& f, const ChainMap& fp, const ChainMap& a,
                  const ChainMap& b);

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);

// good truncation: degrees > k unchanged, cycles at k, zero below
struct TruncationData {
  ChainComplex cx;
  ChainMap incl;       // truncation -> C
  IntMatrix cyc_gens;  // cycle generators at degree k, in C_k coordinates
};
TruncationData truncate_good(const ChainComplex& c, long k);
// induced map on good truncations
ChainMap truncate_good_map(const ChainMap& f, long k);

}  // namespace cartier
