#pragma once
#include <vector>

#include "cartier/cartier.hpp"

namespace cartier {

// finite-rank F-V module over W_k(F_p) = Z/p^k: the linear-algebra shadow of a
// p-divisible group over F_p
struct DieudonneModule {
  long p = 2, k = 1, r = 0;
  IntMatrix F_mat, V_mat;  // r x r over Z/p^k
};

// validates and reduces the matrices mod p^k
DieudonneModule dieudonne_module(long p, long k, IntMatrix f, IntMatrix v);

// the standard catalog
DieudonneModule etale_rank1(long p, long k);         // F = 1, V = p
DieudonneModule formal_rank1(long p, long k);        // F = p, V = 1
DieudonneModule supersingular_dieudonne(long p, long k);  // F = V = [[0,p],[1,0]]

DieudonneModule direct_sum_dieudonne(const DieudonneModule& a, const DieudonneModule& b);
DieudonneModule reduce_dieudonne(const DieudonneModule& m, long k2);  // truncate to k2 <= k
// change of basis F |-> C F C^{-1}; C must be invertible mod p^k
DieudonneModule conjugate_dieudonne(const DieudonneModule& m, const IntMatrix& c);

// checks FV = VF = p mod p^k
ModuleReport verify_dieudonne(const DieudonneModule& m);

// V topologically nilpotent, decided by nilpotence of V mod p (power <= r)
bool is_formal(const DieudonneModule& m);

struct Slope {
  Rat slope;
  long mult = 0;
  bool operator==(const Slope&) const = default;
};
struct SlopeData {
  std::vector<Slope> slopes;  // ascending, multiplicities sum to r
};

// Newton polygon of charpoly(F_mat) with respect to the p-adic valuation;
// throws TruncationTooSmall when the polygon is not certified at truncation k
SlopeData newton_slopes(const DieudonneModule& m);

struct DieudonneHom {
  FGAbelianGroup group;
  std::vector<IntMatrix> basis;  // matrices matching the group generators
};

// Z/p^depth-module of matrices commuting with F and V, with a stabilization
// certificate across depths depth-1 and depth; depth <= min(k_M, k_N)
DieudonneHom hom_dieudonne(const DieudonneModule& m, const DieudonneModule& n, long depth);

// weight-0 concentrated Cartier complex with d = 0, eta = 0
EtaCartierComplex to_cartier(const DieudonneModule& m);

// both hom-sets computed independently and compared by invariant factors
bool bridge_faithfulness_check(const DieudonneModule& m, const DieudonneModule& n,
                               long depth);

}  // namespace cartier
