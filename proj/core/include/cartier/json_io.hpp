#pragma once
#include "cartier/derham_witt.hpp"
#include "cartier/dieudonne.hpp"
#include "cartier/filtered.hpp"
#include "json.hpp"

namespace cartier {

using Json = nlohmann::json;

// All numbers are transported as decimal strings so arbitrary-precision values
// survive any JSON implementation.  Parsers reject unknown fields.

void require_fields(const Json& j, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {});

Json json_of_int(const Int& v);
Int int_of_json(const Json& j);
long long_of_json(const Json& j);  // small integers (weights, degrees)

Json json_of_matrix(const IntMatrix& m);  // nested lists of decimal strings
IntMatrix matrix_of_json(const Json& j);

Json json_of_group(const FGAbelianGroup& g);  // {"relations": matrix}
FGAbelianGroup group_of_json(const Json& j);

Json json_of_graded(const GradedAbelianGroup& g);
GradedAbelianGroup graded_of_json(const Json& j);

Json json_of_witt(const WittVector& w);
WittVector witt_of_json(const Json& j);

Json json_of_chain(const ChainComplex& c);
ChainComplex chain_of_json(const Json& j);

Json json_of_filtered(const FilteredComplex& x);
FilteredComplex filtered_of_json(const Json& j);

Json json_of_filtered_map(const FilteredMap& f);
FilteredMap filtered_map_of_json(const Json& j);

Json json_of_eta_module(const GradedEtaModule& m);
GradedEtaModule eta_module_of_json(const Json& j);

Json json_of_cartier(const EtaCartierComplex& c);
EtaCartierComplex cartier_of_json(const Json& j);

Json json_of_drw(const DRWElement& e);
DRWElement drw_of_json(const Json& j);
DRWExpr drw_expr_of_json(const Json& j);  // {"kind": ..., ...} expression trees

Json json_of_dieudonne(const DieudonneModule& m);
DieudonneModule dieudonne_of_json(const Json& j);

Json json_of_table(const BigradedHomotopyTable& t);
Json json_of_report(const ModuleReport& r);
Json json_of_slopes(const SlopeData& s);

}  // namespace cartier
