#include "cartier/json_io.hpp"

#include <set>

#include "cartier/errors.hpp"

namespace cartier {

namespace {

std::map<long, IntMatrix> weight_maps_of_json(const Json& j) {
  if (!j.is_object()) throw SchemaViolation("expected an object of weight -> matrix");
  std::map<long, IntMatrix> out;
  for (const auto& [key, val] : j.items()) out[std::stol(key)] = matrix_of_json(val);
  return out;
}

Json json_of_weight_maps(const std::map<long, IntMatrix>& m) {
  Json j = Json::object();
  for (const auto& [w, mat] : m) j[std::to_string(w)] = json_of_matrix(mat);
  return j;
}

}  // namespace

void require_fields(const Json& j, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional) {
  if (!j.is_object()) throw SchemaViolation("expected a JSON object");
  std::set<std::string> allowed;
  for (const char* f : required) {
    if (!j.contains(f)) throw SchemaViolation(std::string("missing field \"") + f + "\"");
    allowed.insert(f);
  }
  for (const char* f : optional) allowed.insert(f);
  for (const auto& [key, val] : j.items())
    if (!allowed.count(key)) throw SchemaViolation("unknown field \"" + key + "\"");
}

Json json_of_int(const Int& v) { return to_dec(v); }

Int int_of_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (!j.is_string()) throw SchemaViolation("expected a decimal string");
  const std::string s = j.get<std::string>();
  if (s.empty()) throw SchemaViolation("empty numeric string");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!((s[i] >= '0' && s[i] <= '9') || (i == 0 && s[i] == '-')))
      throw SchemaViolation("bad decimal string \"" + s + "\"");
  return Int(s);
}

long long_of_json(const Json& j) {
  Int v = int_of_json(j);
  if (v > 1000000000 || v < -1000000000) throw SchemaViolation("index out of range");
  return v.convert_to<long>();
}

Json json_of_matrix(const IntMatrix& m) {
  Json rows = Json::array();
  for (long i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (long j = 0; j < m.cols; ++j) row.push_back(json_of_int(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  Json j;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  j["entries"] = std::move(rows);
  return j;
}

IntMatrix matrix_of_json(const Json& j) {
  require_fields(j, {"rows", "cols", "entries"});
  long r = long_of_json(j["rows"]), c = long_of_json(j["cols"]);
  if (r < 0 || c < 0 || !j["entries"].is_array() ||
      j["entries"].size() != static_cast<std::size_t>(r))
    throw SchemaViolation("matrix shape mismatch");
  IntMatrix m(r, c);
  for (long i = 0; i < r; ++i) {
    const Json& row = j["entries"][static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(c))
      throw SchemaViolation("matrix row length mismatch");
    for (long k = 0; k < c; ++k) m.at(i, k) = int_of_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json json_of_group(const FGAbelianGroup& g) {
  Json j;
  j["relations"] = json_of_matrix(g.relations);
  return j;
}

FGAbelianGroup group_of_json(const Json& j) {
  require_fields(j, {"relations"});
  return FGAbelianGroup(matrix_of_json(j["relations"]));
}

Json json_of_graded(const GradedAbelianGroup& g) {
  Json parts = Json::object();
  for (const auto& [w, grp] : g.parts) parts[std::to_string(w)] = json_of_group(grp);
  Json j;
  j["parts"] = std::move(parts);
  return j;
}

GradedAbelianGroup graded_of_json(const Json& j) {
  require_fields(j, {"parts"});
  GradedAbelianGroup g;
  for (const auto& [key, val] : j["parts"].items())
    g.set(std::stol(key), group_of_json(val));
  return g;
}

namespace {

const char* base_name(BaseTag t) {
  switch (t) {
    case BaseTag::Fp: return "Fp";
    case BaseTag::Z: return "Z";
    case BaseTag::Zx: return "Z[x]";
    case BaseTag::Fpx: return "Fp[x]";
  }
  return "?";
}

BaseRing base_of_json(const Json& j, const Int& p, const Json* deg_bound) {
  std::string b = j.get<std::string>();
  if (b == "Fp") return BaseRing::fp(p);
  if (b == "Z") return BaseRing::z();
  if (b == "Z[x]") return BaseRing::zx();
  if (b == "Fp[x]") {
    if (!deg_bound) throw SchemaViolation("Fp[x] base needs deg_bound");
    return BaseRing::fpx(p, long_of_json(*deg_bound));
  }
  throw SchemaViolation("unknown base \"" + b + "\"");
}

}  // namespace

Json json_of_witt(const WittVector& w) {
  Json j;
  j["p"] = json_of_int(w.p);
  j["n"] = w.n;
  j["base"] = base_name(w.base.tag);
  if (w.base.tag == BaseTag::Fpx) j["deg_bound"] = w.base.deg_bound;
  Json comps = Json::array();
  for (const auto& c : w.comp) {
    Json poly = Json::array();
    for (const auto& coeff : c.c) poly.push_back(json_of_int(coeff));
    comps.push_back(std::move(poly));
  }
  j["components"] = std::move(comps);
  return j;
}

WittVector witt_of_json(const Json& j) {
  require_fields(j, {"p", "n", "base", "components"}, {"deg_bound"});
  Int p = int_of_json(j["p"]);
  long n = long_of_json(j["n"]);
  BaseRing base = base_of_json(j["base"], p,
                               j.contains("deg_bound") ? &j["deg_bound"] : nullptr);
  if (!j["components"].is_array() || j["components"].size() != static_cast<std::size_t>(n))
    throw SchemaViolation("component count must equal n");
  std::vector<BasePoly> comp;
  for (const auto& cj : j["components"]) {
    BasePoly c;
    if (!cj.is_array()) throw SchemaViolation("component must be a coefficient list");
    for (const auto& x : cj) c.c.push_back(int_of_json(x));
    comp.push_back(base_reduce(base, std::move(c)));
  }
  return witt_from_components(p, static_cast<int>(n), base, std::move(comp));
}

namespace {

Json json_of_ring(const CoeffRing& r) {
  switch (r.tag) {
    case CoeffTag::Z: return "Z";
    case CoeffTag::Q: return "Q";
    case CoeffTag::ZmodM: return "Z/" + to_dec(r.modulus);
  }
  return "?";
}

CoeffRing ring_of_json(const Json& j) {
  std::string s = j.get<std::string>();
  if (s == "Z") return CoeffRing::z();
  if (s == "Q") return CoeffRing::q();
  if (s.rfind("Z/", 0) == 0) return CoeffRing::zmod(Int(s.substr(2)));
  throw SchemaViolation("unknown coefficient ring \"" + s + "\"");
}

}  // namespace

Json json_of_chain(const ChainComplex& c) {
  Json groups = Json::object(), diffs = Json::object();
  for (const auto& [n, g] : c.groups) groups[std::to_string(n)] = json_of_group(g);
  for (const auto& [n, d] : c.diff) diffs[std::to_string(n)] = json_of_matrix(d);
  Json j;
  j["ring"] = json_of_ring(c.ring);
  j["groups"] = std::move(groups);
  j["differentials"] = std::move(diffs);
  return j;
}

ChainComplex chain_of_json(const Json& j) {
  require_fields(j, {"ring", "groups", "differentials"});
  ChainComplex c;
  c.ring = ring_of_json(j["ring"]);
  for (const auto& [key, val] : j["groups"].items())
    c.groups[std::stol(key)] = group_of_json(val);
  for (const auto& [key, val] : j["differentials"].items())
    c.diff[std::stol(key)] = matrix_of_json(val);
  c.validate();
  return c;
}

Json json_of_filtered(const FilteredComplex& x) {
  Json j;
  j["window"] = Json::array({x.w_min, x.w_max});
  j["policy"] = x.policy == BelowPolicy::Constant ? "constant" : "zero";
  Json levels = Json::object(), trans = Json::object();
  for (const auto& [i, c] : x.level) levels[std::to_string(i)] = json_of_chain(c);
  for (const auto& [i, t] : x.trans) trans[std::to_string(i)] = json_of_weight_maps(t.comp);
  j["levels"] = std::move(levels);
  j["transitions"] = std::move(trans);
  return j;
}

FilteredComplex filtered_of_json(const Json& j) {
  require_fields(j, {"window", "policy", "levels", "transitions"});
  FilteredComplex x;
  if (!j["window"].is_array() || j["window"].size() != 2)
    throw SchemaViolation("window must be [w_min, w_max]");
  x.w_min = long_of_json(j["window"][0]);
  x.w_max = long_of_json(j["window"][1]);
  std::string pol = j["policy"].get<std::string>();
  if (pol == "constant") x.policy = BelowPolicy::Constant;
  else if (pol == "zero") x.policy = BelowPolicy::Zero;
  else throw SchemaViolation("unknown policy \"" + pol + "\"");
  for (const auto& [key, val] : j["levels"].items())
    x.level[std::stol(key)] = chain_of_json(val);
  if (!x.level.empty()) x.ring = x.level.begin()->second.ring;
  for (const auto& [key, val] : j["transitions"].items()) {
    long i = std::stol(key);
    ChainMap t;
    t.dom = x.level_at(i + 1);
    t.cod = x.level_at(i);
    t.comp = weight_maps_of_json(val);
    x.trans[i] = std::move(t);
  }
  x.validate();
  return x;
}

Json json_of_filtered_map(const FilteredMap& f) {
  Json j;
  j["dom"] = json_of_filtered(f.dom);
  j["cod"] = json_of_filtered(f.cod);
  Json comp = Json::object();
  for (const auto& [i, c] : f.comp) comp[std::to_string(i)] = json_of_weight_maps(c.comp);
  j["comp"] = std::move(comp);
  return j;
}

FilteredMap filtered_map_of_json(const Json& j) {
  require_fields(j, {"dom", "cod", "comp"});
  FilteredMap f;
  f.dom = filtered_of_json(j["dom"]);
  f.cod = filtered_of_json(j["cod"]);
  for (const auto& [key, val] : j["comp"].items()) {
    long i = std::stol(key);
    ChainMap c;
    c.dom = f.dom.level_at(i);
    c.cod = f.cod.level_at(i);
    c.comp = weight_maps_of_json(val);
    f.comp[i] = std::move(c);
  }
  f.validate();
  return f;
}

Json json_of_eta_module(const GradedEtaModule& m) {
  Json j;
  j["ring"] = m.ring == EtaRingSel::Base ? "BASE" : "CIRCLE";
  Json parts = Json::object();
  for (const auto& [w, g] : m.part) parts[std::to_string(w)] = json_of_group(g);
  j["parts"] = std::move(parts);
  j["eta"] = json_of_weight_maps(m.eta);
  if (m.ring == EtaRingSel::Circle) j["d"] = json_of_weight_maps(m.dmap);
  return j;
}

GradedEtaModule eta_module_of_json(const Json& j) {
  require_fields(j, {"ring", "parts", "eta"}, {"d"});
  GradedEtaModule m;
  std::string r = j["ring"].get<std::string>();
  if (r == "BASE") m.ring = EtaRingSel::Base;
  else if (r == "CIRCLE") m.ring = EtaRingSel::Circle;
  else throw SchemaViolation("unknown eta ring \"" + r + "\"");
  for (const auto& [key, val] : j["parts"].items())
    m.part[std::stol(key)] = group_of_json(val);
  m.eta = weight_maps_of_json(j["eta"]);
  if (j.contains("d")) m.dmap = weight_maps_of_json(j["d"]);
  return m;
}

Json json_of_cartier(const EtaCartierComplex& c) {
  Json j;
  j["p"] = c.p;
  j["module"] = json_of_eta_module(c.mod);
  j["d"] = json_of_weight_maps(c.d);
  j["F"] = json_of_weight_maps(c.F);
  j["V"] = json_of_weight_maps(c.V);
  return j;
}

EtaCartierComplex cartier_of_json(const Json& j) {
  require_fields(j, {"p", "module", "d", "F", "V"});
  EtaCartierComplex c;
  c.p = long_of_json(j["p"]);
  c.mod = eta_module_of_json(j["module"]);
  c.d = weight_maps_of_json(j["d"]);
  c.F = weight_maps_of_json(j["F"]);
  c.V = weight_maps_of_json(j["V"]);
  return c;
}

Json json_of_drw(const DRWElement& e) {
  Json terms = Json::array();
  for (const auto& t : e.terms) {
    Json tj;
    tj["s"] = t.s;
    tj["j"] = t.j;
    tj["coeff"] = json_of_int(t.a);
    terms.push_back(std::move(tj));
  }
  Json j;
  j["p"] = e.p;
  j["m"] = e.m;
  j["q"] = e.q;
  j["terms"] = std::move(terms);
  return j;
}

DRWElement drw_of_json(const Json& j) {
  require_fields(j, {"p", "m", "q", "terms"});
  long p = long_of_json(j["p"]), m = long_of_json(j["m"]), q = long_of_json(j["q"]);
  DRWElement e = drw_zero(p, m, q);
  for (const auto& tj : j["terms"]) {
    require_fields(tj, {"s", "j", "coeff"});
    e = drw_add(e, drw_term(p, m, q, long_of_json(tj["s"]), long_of_json(tj["j"]),
                            int_of_json(tj["coeff"])));
  }
  return e;
}

DRWExpr drw_expr_of_json(const Json& j) {
  require_fields(j, {"kind"}, {"coeff", "j", "args", "arg"});
  std::string k = j["kind"].get<std::string>();
  if (k == "monomial") {
    return DRWExpr::monomial(j.contains("coeff") ? int_of_json(j["coeff"]) : Int(1),
                             j.contains("j") ? long_of_json(j["j"]) : 0);
  }
  if (k == "sum" || k == "prod") {
    if (!j.contains("args") || !j["args"].is_array())
      throw SchemaViolation(k + " needs an args list");
    std::vector<DRWExpr> xs;
    for (const auto& a : j["args"]) xs.push_back(drw_expr_of_json(a));
    return k == "sum" ? DRWExpr::sum(std::move(xs)) : DRWExpr::prod(std::move(xs));
  }
  if (!j.contains("arg")) throw SchemaViolation(k + " needs an arg");
  DRWExpr inner = drw_expr_of_json(j["arg"]);
  if (k == "d") return DRWExpr::d(std::move(inner));
  if (k == "f") return DRWExpr::f(std::move(inner));
  if (k == "v") return DRWExpr::v(std::move(inner));
  if (k == "r") return DRWExpr::r(std::move(inner));
  throw SchemaViolation("unknown expression kind \"" + k + "\"");
}

Json json_of_dieudonne(const DieudonneModule& m) {
  Json j;
  j["p"] = m.p;
  j["k"] = m.k;
  j["F"] = json_of_matrix(m.F_mat);
  j["V"] = json_of_matrix(m.V_mat);
  return j;
}

DieudonneModule dieudonne_of_json(const Json& j) {
  require_fields(j, {"p", "k", "F", "V"});
  return dieudonne_module(long_of_json(j["p"]), long_of_json(j["k"]),
                          matrix_of_json(j["F"]), matrix_of_json(j["V"]));
}

Json json_of_table(const BigradedHomotopyTable& t) {
  Json entries = Json::array();
  for (const auto& [key, g] : t.entries) {
    Json e;
    e["degree"] = key.first;
    e["weight"] = key.second;
    e["group"] = g.describe();
    entries.push_back(std::move(e));
  }
  Json j;
  j["entries"] = std::move(entries);
  return j;
}

Json json_of_report(const ModuleReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["violations"] = r.violations;
  return j;
}

Json json_of_slopes(const SlopeData& s) {
  Json arr = Json::array();
  for (const auto& sl : s.slopes) {
    Json e;
    e["slope"] = to_dec(numerator(sl.slope)) + "/" + to_dec(denominator(sl.slope));
    e["mult"] = sl.mult;
    arr.push_back(std::move(e));
  }
  Json j;
  j["slopes"] = std::move(arr);
  return j;
}

}  // namespace cartier
