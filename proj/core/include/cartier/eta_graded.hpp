#pragma once
#include <string>
#include <vector>

#include "cartier/abelian.hpp"

namespace cartier {

// Base = Z[eta]/2eta with |eta| = 1; Circle = Z[eta,d]/(2eta, d^2 - eta d)
// with |eta| = |d| = 1.
enum class EtaRingSel { Base, Circle };

// weight-w additive component of the ring, presented on the raw monomials
// eta^a d^b with a + b = w and reduced by SNF
FGAbelianGroup eta_ring_weight(EtaRingSel r, long w);

// Graded module given weightwise, with the eta (and d) actions as matrices
// raising the weight by one.  Weights outside the stored support are zero.
struct GradedEtaModule {
  EtaRingSel ring = EtaRingSel::Base;
  std::map<long, FGAbelianGroup> part;
  std::map<long, IntMatrix> eta;   // M_w -> M_{w+1}
  std::map<long, IntMatrix> dmap;  // Circle only

  long w_lo() const;
  long w_hi() const;
  FGAbelianGroup part_at(long w) const;
  IntMatrix eta_at(long w) const;
  IntMatrix d_at(long w) const;
};

struct ModuleReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// checks well-definedness of the actions, 2(eta m) = 0, and (for Circle)
// d(d m) = eta d m, with witnesses in the report
ModuleReport verify_module(const GradedEtaModule& m);

// the ring as a module over itself, truncated above weight w_max
GradedEtaModule eta_ring_module(EtaRingSel r, long w_max);

GradedEtaModule twist(const GradedEtaModule& m, long i);  // weights shifted by i
GradedAbelianGroup to_graded(const GradedEtaModule& m);
GradedEtaModule direct_sum_eta(const GradedEtaModule& a, const GradedEtaModule& b);

struct GradedEtaMap {
  GradedEtaModule dom, cod;
  std::map<long, IntMatrix> comp;

  IntMatrix comp_at(long w) const;
  void validate() const;  // well defined and commutes with eta (and d)
};

GradedEtaMap graded_eta_identity(const GradedEtaModule& m);
GradedEtaMap compose(const GradedEtaMap& g, const GradedEtaMap& f);
bool graded_maps_equal(const GradedEtaMap& f, const GradedEtaMap& g);

// Koszul-signed tensor over the base ring: eta acts by eta (x) 1 +
// (-1)^{|m|} 1 (x) eta, blocks ordered by the weight of the left factor
GradedEtaModule koszul_tensor(const GradedEtaModule& m, const GradedEtaModule& n);
// m (x) n |-> (-1)^{|m||n|} n (x) m
GradedEtaMap koszul_braiding(const GradedEtaModule& m, const GradedEtaModule& n);

}  // namespace cartier
