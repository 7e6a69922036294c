#pragma once
#include <map>
#include <string>
#include <vector>

#include "cartier/int_matrix.hpp"

namespace cartier {

// Finitely generated abelian group presented by an integer relation matrix
// (columns = generators, rows = relations).  The invariant-factor normal form
// is a complete isomorphism invariant and is derived once at construction.
struct FGAbelianGroup {
  IntMatrix relations;               // rows x num_generators
  std::vector<Int> invariant_factors;  // successive divisibility, each > 1
  long free_rank = 0;

  FGAbelianGroup() = default;
  explicit FGAbelianGroup(IntMatrix rel);

  static FGAbelianGroup free_group(long rank);
  static FGAbelianGroup cyclic(const Int& n);  // Z/n (n=0 gives Z)
  static FGAbelianGroup zero();
  static FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b);

  long num_generators() const { return relations.cols; }
  bool is_zero() const { return free_rank == 0 && invariant_factors.empty(); }
  Int order() const;  // 0 if infinite

  // relation lattice = column span of relations^T
  bool element_is_zero(const std::vector<Int>& coords) const;
  bool elements_equal(const std::vector<Int>& x, const std::vector<Int>& y) const;

  bool same_invariants(const FGAbelianGroup& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  std::string describe() const;  // e.g. "Z^2 + Z/2 + Z/4", "0"
};

// Map between presented groups, given on generators: cod-coords = mat * dom-coords.
struct GroupMap {
  FGAbelianGroup dom, cod;
  IntMatrix mat;  // cod.num_generators() x dom.num_generators()

  bool well_defined() const;  // every dom relation maps into cod's relation lattice
};

GroupMap identity_map(const FGAbelianGroup& g);
GroupMap zero_map(const FGAbelianGroup& dom, const FGAbelianGroup& cod);
GroupMap compose(const GroupMap& g, const GroupMap& f);  // g after f

// Presentation of the subgroup of `ambient` generated by the columns of gens.
FGAbelianGroup subgroup_presentation(const IntMatrix& gens, const FGAbelianGroup& ambient);

struct KernelCokernel {
  FGAbelianGroup ker;
  IntMatrix ker_gens;  // columns: kernel generators in dom coordinates
  FGAbelianGroup coker;
};

// Throws RelationViolation if f is not well defined.
KernelCokernel kernel_cokernel(const GroupMap& f);

// Express columns of targets through generator columns gens modulo the
// relation lattice of ambient; nullopt if some column is not expressible.
std::optional<IntMatrix> express_in_generators(const IntMatrix& gens,
                                               const FGAbelianGroup& ambient,
                                               const IntMatrix& targets);

struct CommutationSolution {
  IntMatrix lattice_gens;   // columns generate {x : A x == 0 mod p^k} (contains p^k Z^n)
  FGAbelianGroup solution_module;  // the solution set as a Z/p^k-module's underlying group
};

// Homogeneous linear system A x == 0 over Z/p^k.
CommutationSolution solve_commutation(const IntMatrix& a, const Int& p, long k);

// Graded abelian group: finitely supported weight -> group.
struct GradedAbelianGroup {
  std::map<long, FGAbelianGroup> parts;

  const FGAbelianGroup& at(long w) const;
  void set(long w, FGAbelianGroup g);
  bool same_invariants(const GradedAbelianGroup& o) const;
  std::string describe() const;
};

}  // namespace cartier
