#include "cartier/abelian.hpp"

#include <sstream>

#include "cartier/errors.hpp"

namespace cartier {

FGAbelianGroup::FGAbelianGroup(IntMatrix rel) : relations(std::move(rel)) {
  SNFResult s = smith_normal_form(relations);
  long n = std::min(relations.rows, relations.cols);
  long nonzero = 0;
  for (long i = 0; i < n; ++i) {
    const Int& d = s.diag.at(i, i);
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) invariant_factors.push_back(d);
  }
  free_rank = relations.cols - nonzero;
}

FGAbelianGroup FGAbelianGroup::free_group(long rank) {
  return FGAbelianGroup(IntMatrix(0, rank));
}

FGAbelianGroup FGAbelianGroup::cyclic(const Int& n) {
  IntMatrix rel(1, 1);
  rel.at(0, 0) = n;
  return FGAbelianGroup(rel);
}

FGAbelianGroup FGAbelianGroup::zero() { return FGAbelianGroup(IntMatrix(0, 0)); }

FGAbelianGroup FGAbelianGroup::direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b) {
  IntMatrix rel(a.relations.rows + b.relations.rows, a.relations.cols + b.relations.cols);
  for (long i = 0; i < a.relations.rows; ++i)
    for (long j = 0; j < a.relations.cols; ++j) rel.at(i, j) = a.relations.at(i, j);
  for (long i = 0; i < b.relations.rows; ++i)
    for (long j = 0; j < b.relations.cols; ++j)
      rel.at(a.relations.rows + i, a.relations.cols + j) = b.relations.at(i, j);
  return FGAbelianGroup(rel);
}

Int FGAbelianGroup::order() const {
  if (free_rank > 0) return 0;
  Int o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

bool FGAbelianGroup::element_is_zero(const std::vector<Int>& coords) const {
  return in_column_lattice(relations.transpose(), coords);
}

bool FGAbelianGroup::elements_equal(const std::vector<Int>& x, const std::vector<Int>& y) const {
  std::vector<Int> d(x.size());
  for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return element_is_zero(d);
}

std::string FGAbelianGroup::describe() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : invariant_factors) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

bool GroupMap::well_defined() const {
  if (mat.rows != cod.num_generators() || mat.cols != dom.num_generators()) return false;
  // image of each dom relation must lie in cod's relation lattice
  IntMatrix images = mat.mul(dom.relations.transpose());  // cod_gens x num_dom_relations
  IntMatrix codlat = cod.relations.transpose();
  SNFResult s = smith_normal_form(codlat);
  return solve_integer(s, images).has_value();
}

GroupMap identity_map(const FGAbelianGroup& g) {
  return GroupMap{g, g, IntMatrix::identity(g.num_generators())};
}

GroupMap zero_map(const FGAbelianGroup& dom, const FGAbelianGroup& cod) {
  return GroupMap{dom, cod, IntMatrix::zero(cod.num_generators(), dom.num_generators())};
}

GroupMap compose(const GroupMap& g, const GroupMap& f) {
  return GroupMap{f.dom, g.cod, g.mat.mul(f.mat)};
}

FGAbelianGroup subgroup_presentation(const IntMatrix& gens, const FGAbelianGroup& ambient) {
  // relations: combinations of the generator columns lying in the relation lattice
  IntMatrix rel_gens = preimage_lattice(gens, ambient.relations.transpose());
  return FGAbelianGroup(rel_gens.transpose());
}

KernelCokernel kernel_cokernel(const GroupMap& f) {
  if (!f.well_defined())
    throw RelationViolation("map does not descend to the presented groups");
  KernelCokernel r;
  // kernel: x in dom with f(x) in cod's relation lattice
  r.ker_gens = preimage_lattice(f.mat, f.cod.relations.transpose());
  r.ker = subgroup_presentation(r.ker_gens, f.dom);
  // cokernel: cod generators modulo cod relations + images of dom generators
  r.coker = FGAbelianGroup(f.cod.relations.vstack(f.mat.transpose()));
  return r;
}

std::optional<IntMatrix> express_in_generators(const IntMatrix& gens,
                                               const FGAbelianGroup& ambient,
                                               const IntMatrix& targets) {
  // gens * u + rel^T * lambda = target
  IntMatrix rel_t = ambient.relations.transpose();
  IntMatrix stacked = gens.hstack(rel_t);
  auto sol = solve_integer(stacked, targets);
  if (!sol) return std::nullopt;
  return sol->submatrix_rows(0, gens.cols);
}

CommutationSolution solve_commutation(const IntMatrix& a, const Int& p, long k) {
  Int pk = pow_int(p, static_cast<unsigned long>(k));
  long n = a.cols;
  IntMatrix modlat = IntMatrix::identity(a.rows).scaled(pk);
  IntMatrix lattice = preimage_lattice(a, modlat);
  CommutationSolution cs;
  cs.lattice_gens = lattice;
  // solution module = lattice / p^k Z^n
  FGAbelianGroup ambient(IntMatrix::identity(n).scaled(pk));
  cs.solution_module = subgroup_presentation(lattice, ambient);
  return cs;
}

const FGAbelianGroup& GradedAbelianGroup::at(long w) const {
  static const FGAbelianGroup z = FGAbelianGroup::zero();
  auto it = parts.find(w);
  return it == parts.end() ? z : it->second;
}

void GradedAbelianGroup::set(long w, FGAbelianGroup g) {
  if (g.is_zero())
    parts.erase(w);
  else
    parts[w] = std::move(g);
}

bool GradedAbelianGroup::same_invariants(const GradedAbelianGroup& o) const {
  for (const auto& [w, g] : parts)
    if (!g.same_invariants(o.at(w))) return false;
  for (const auto& [w, g] : o.parts)
    if (!g.same_invariants(at(w))) return false;
  return true;
}

std::string GradedAbelianGroup::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, g] : parts) {
    if (!first) os << "; ";
    os << "wt " << w << ": " << g.describe();
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace cartier
