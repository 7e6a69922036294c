// cartier-lab: command-line front end for the exact Witt / de Rham-Witt /
// Cartier-module computations.  Every result is JSON with all numbers as
// decimal strings; identical inputs give byte-identical outputs.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cartier/derham_witt.hpp"
#include "cartier/dieudonne.hpp"
#include "cartier/errors.hpp"
#include "cartier/json_io.hpp"
#include "suites.hpp"

using namespace cartier;

namespace {

// inline JSON if the argument looks like an object, otherwise a file path
Json load_input(const std::string& s) {
  std::string text = s;
  if (!s.empty() && s[0] != '{' && s[0] != '[') {
    std::ifstream in(s);
    if (!in) throw SchemaViolation("cannot open input file \"" + s + "\"");
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaViolation("input is not valid JSON");
  return j;
}

std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw SchemaViolation("empty entry in integer list \"" + s + "\"");
    out.emplace_back(item);
  }
  return out;
}

// scalar components print as bare decimal strings, polynomials as coefficient
// lists, matching the input schema
Json json_of_base_polys(const std::vector<BasePoly>& v) {
  bool scalar = true;
  for (const auto& c : v) scalar = scalar && c.c.size() <= 1;
  Json a = Json::array();
  for (const auto& c : v) {
    if (scalar) {
      a.push_back(to_dec(c.c.empty() ? Int(0) : c.c[0]));
    } else {
      Json poly = Json::array();
      for (const auto& x : c.c) poly.push_back(to_dec(x));
      a.push_back(std::move(poly));
    }
  }
  return a;
}

Json json_of_described_graded(const GradedAbelianGroup& g) {
  Json j = json_of_graded(g);
  Json desc = Json::object();
  for (const auto& [w, grp] : g.parts) desc[std::to_string(w)] = grp.describe();
  j["described"] = std::move(desc);
  return j;
}

Json json_of_criterion(const CriterionResult& r) {
  Json j;
  j["index"] = r.index;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["expected_pass"] = r.expected_pass;
  j["detail"] = r.detail;
  return j;
}

long profile_long(const Json& profile, const char* key, long fallback) {
  if (profile.is_object() && profile.contains(key)) return long_of_json(profile[key]);
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  Json profile;
  if (const char* env = std::getenv("CARTIER_LAB_PROFILE")) {
    profile = Json::parse(env, nullptr, false);
    if (profile.is_discarded()) {
      std::cerr << "CARTIER_LAB_PROFILE is not valid JSON\n";
      return 1;
    }
  }

  CLI::App app{"exact Witt-vector, de Rham-Witt, and Cartier-module computations"};
  app.require_subcommand(1);

  unsigned long long seed = 20260824ULL;
  std::string out_path;
  app.add_option("--seed", seed, "seed for randomized suites");
  app.add_option("--out", out_path, "write the result JSON to a file instead of stdout");

  long p = 2, n = profile_long(profile, "n", 2), m = 1;
  long deg = profile_long(profile, "deg", 12);
  long depth = profile_long(profile, "depth", 6);
  long k = profile_long(profile, "k", 6);
  long nbound = profile_long(profile, "N", 10);
  long weight_lo = 0, weight_hi = 0, twist = 0, cyclic_n = 2;
  std::string in1, in2, comps_a, comps_b, base_name = "Fp", mode = "postnikov";
  std::string suite_name, frob_sel = "F";

  Json result;
  int exit_code = 0;

  // ---- witt ----
  auto* witt = app.add_subcommand("witt", "truncated Witt vectors");
  witt->require_subcommand(1);
  auto* wghost = witt->add_subcommand("ghost", "ghost coordinates of a vector");
  wghost->add_option("--p", p)->required();
  wghost->add_option("--n", n)->required();
  wghost->add_option("--components", comps_a, "comma-separated components")->required();
  wghost->add_option("--base", base_name, "Z or Z[x] (default Z)");
  wghost->callback([&] {
    if (base_name == "Fp") base_name = "Z";
    BaseRing base = base_name == "Z[x]" ? BaseRing::zx() : BaseRing::z();
    if (base_name != "Z" && base_name != "Z[x]")
      throw SchemaViolation("ghost needs a p-torsion-free base (Z or Z[x])");
    std::vector<BasePoly> comp;
    for (const Int& v : parse_int_list(comps_a)) comp.push_back(BasePoly::from_int(v));
    auto w = witt_from_components(p, static_cast<int>(n), base, comp);
    result["ghost"] = json_of_base_polys(ghost(w));
  });
  auto* warith = witt->add_subcommand("arith", "sum and product over F_p");
  warith->add_option("--p", p)->required();
  warith->add_option("--n", n)->required();
  warith->add_option("--a", comps_a, "comma-separated components")->required();
  warith->add_option("--b", comps_b, "comma-separated components")->required();
  warith->callback([&] {
    auto mk = [&](const std::string& s) {
      std::vector<BasePoly> comp;
      for (const Int& v : parse_int_list(s)) comp.push_back(BasePoly::from_int(v));
      return witt_from_components(p, static_cast<int>(n), BaseRing::fp(p), comp);
    };
    WittVector a = mk(comps_a), b = mk(comps_b);
    result["sum"] = json_of_base_polys(witt_add(a, b).comp);
    result["product"] = json_of_base_polys(witt_mul(a, b).comp);
    result["difference"] = json_of_base_polys(witt_sub(a, b).comp);
  });
  auto* wpolys = witt->add_subcommand("structure-polys", "universal sum/product polynomials");
  wpolys->add_option("--p", p)->required();
  wpolys->add_option("--n", n)->required();
  wpolys->callback([&] {
    const auto& sp = witt_structure_polys(p, static_cast<int>(n));
    sp.verify_ghost_identities();
    auto strs = [](const std::vector<Poly>& v) {
      Json a = Json::array();
      for (const auto& q : v) a.push_back(q.str());
      return a;
    };
    result["verified"] = true;
    result["sum"] = strs(sp.S);
    result["product"] = strs(sp.P);
    result["negation"] = strs(sp.N);
    result["frobenius"] = strs(sp.F);
  });

  // ---- filtered ----
  auto* filt = app.add_subcommand("filtered", "filtered chain complexes");
  filt->require_subcommand(1);
  auto* fsphere = filt->add_subcommand("tc-sphere", "rational cyclotomic table for the sphere");
  fsphere->add_option("--N", nbound, "weight bound");
  fsphere->callback([&] { result = json_of_table(rational_tc_sphere(nbound)); });
  auto* fcyc = filt->add_subcommand("cyclic-n", "fixed points via the n-series");
  fcyc->add_option("--n", cyclic_n)->required();
  fcyc->add_option("--deg", deg, "degree bound");
  fcyc->callback(
      [&] { result = json_of_table(cyclic_fixed_points_via_n_series(cyclic_n, deg)); });
  auto* fhomot = filt->add_subcommand("homotopy", "bigraded homotopy table");
  fhomot->add_option("--in", in1, "filtered complex (file or inline JSON)")->required();
  fhomot->add_option("--lo", weight_lo, "lowest degree")->required();
  fhomot->add_option("--hi", weight_hi, "highest degree")->required();
  fhomot->callback([&] {
    auto x = filtered_of_json(load_input(in1));
    result = json_of_table(homotopy_table(x, weight_lo, weight_hi));
  });
  auto* ftrunc = filt->add_subcommand("truncate", "postnikov or neutral truncation");
  ftrunc->add_option("--in", in1)->required();
  ftrunc->add_option("--k", k, "truncation index")->required();
  ftrunc->add_option("--mode", mode, "postnikov (default) or neutral");
  ftrunc->callback([&] {
    auto x = filtered_of_json(load_input(in1));
    if (mode == "postnikov") result = json_of_filtered(truncate_postnikov(x, k));
    else if (mode == "neutral") result = json_of_filtered(truncate_neutral(x, k));
    else throw SchemaViolation("unknown truncation mode \"" + mode + "\"");
  });
  auto* ftensor = filt->add_subcommand("tensor", "Day-convolution tensor product");
  ftensor->add_option("--in", in1)->required();
  ftensor->add_option("--with", in2)->required();
  ftensor->callback([&] {
    result = json_of_filtered(
        day_tensor(filtered_of_json(load_input(in1)), filtered_of_json(load_input(in2))));
  });
  auto* fpull = filt->add_subcommand("pullback", "pullback of two filtered maps");
  fpull->add_option("--f", in1, "filtered map (file or inline JSON)")->required();
  fpull->add_option("--g", in2, "filtered map with the same codomain")->required();
  fpull->callback([&] {
    result = json_of_filtered(
        pullback(filtered_map_of_json(load_input(in1)), filtered_map_of_json(load_input(in2))));
  });

  // ---- cartier ----
  auto* car = app.add_subcommand("cartier", "eta-deformed Cartier complexes");
  car->require_subcommand(1);
  auto* cverify = car->add_subcommand("verify", "check the defining relations");
  cverify->add_option("--in", in1)->required();
  cverify->callback(
      [&] { result = json_of_report(verify_cartier(cartier_of_json(load_input(in1)))); });
  auto* cnorm = car->add_subcommand("norm", "norm into the fixed points");
  cnorm->add_option("--in", in1)->required();
  cnorm->callback([&] {
    auto c = cartier_of_json(load_input(in1));
    auto nfix = fixed_pi0(c);
    auto nm = norm_pi0(c, nfix);
    Json maps = Json::object();
    for (const auto& [w, mat] : nm) maps[std::to_string(w)] = json_of_matrix(mat);
    result["fixed"] = json_of_described_graded(nfix.parts);
    result["norm"] = std::move(maps);
  });
  auto* cfixed = car->add_subcommand("fixed", "fixed-point module");
  cfixed->add_option("--in", in1)->required();
  cfixed->callback([&] {
    result = json_of_described_graded(fixed_pi0(cartier_of_json(load_input(in1))).parts);
  });
  auto* corbit = car->add_subcommand("orbit", "orbit module");
  corbit->add_option("--in", in1)->required();
  corbit->callback([&] {
    result = json_of_described_graded(orbit_pi0(cartier_of_json(load_input(in1))).parts);
  });
  auto* ccomplete = car->add_subcommand("complete", "derived V-completeness");
  ccomplete->add_option("--in", in1)->required();
  ccomplete->add_option("--depth", depth, "tower depth");
  ccomplete->callback([&] {
    result["derived_v_complete"] =
        is_derived_v_complete(cartier_of_json(load_input(in1)), depth);
  });
  auto* ctc = car->add_subcommand("tc", "heart-level TC");
  ctc->add_option("--in", in1)->required();
  ctc->add_option("--frob", frob_sel, "F (default) or identity");
  ctc->callback([&] {
    auto c = cartier_of_json(load_input(in1));
    TcHeart t;
    if (frob_sel == "F") {
      t = tc_heart(c);
    } else if (frob_sel == "identity") {
      WeightMaps id;
      for (const auto& [w, g] : c.mod.part) id[w] = IntMatrix::identity(g.num_generators());
      t = tc_heart(c, id);
    } else {
      throw SchemaViolation("unknown frobenius \"" + frob_sel + "\"");
    }
    result["h0"] = json_of_described_graded(t.h0);
    result["h_minus_1"] = json_of_described_graded(t.hm1);
  });
  auto* chom = car->add_subcommand("hom", "hom group of two complexes");
  chom->add_option("--in", in1)->required();
  chom->add_option("--with", in2)->required();
  chom->add_option("--depth", depth, "truncation depth");
  chom->callback([&] {
    auto h = hom_cartier(cartier_of_json(load_input(in1)),
                         cartier_of_json(load_input(in2)), depth);
    result["group"] = json_of_group(h.group);
    result["described"] = h.group.describe();
    result["generators"] = h.basis.size();
  });

  // ---- drw ----
  auto* drw = app.add_subcommand("drw", "truncated de Rham-Witt complex of F_p[x]");
  drw->require_subcommand(1);
  auto* dbasis = drw->add_subcommand("basis", "normal-form basis slots");
  dbasis->add_option("--p", p)->required();
  dbasis->add_option("--m", m, "truncation level")->required();
  dbasis->add_option("--deg", deg, "x-degree bound");
  dbasis->callback([&] {
    const auto& w = drw_complex(p, m, deg);
    auto slots = [&](const std::vector<DRWSlot>& v) {
      Json a = Json::array();
      for (const auto& b : v) {
        Json s;
        s["s"] = b.s;
        s["j"] = b.j;
        s["order"] = to_dec(pow_int(Int(p), static_cast<unsigned long>(m - b.s)));
        a.push_back(std::move(s));
      }
      return a;
    };
    result["degree0"] = slots(w.basis0);
    result["degree1"] = slots(w.basis1);
  });
  auto* dop = drw->add_subcommand("op", "evaluate an expression tree");
  dop->add_option("--p", p)->required();
  dop->add_option("--m", m)->required();
  dop->add_option("--deg", deg, "x-degree bound");
  dop->add_option("--expr", in1, "expression (file or inline JSON)")->required();
  dop->callback([&] {
    DRWElement e = normalize(drw_expr_of_json(load_input(in1)), p, m, deg);
    result = json_of_drw(e);
    result["printed"] = drw_str(e);
  });
  auto* dsuite = drw->add_subcommand("identity-suite", "count operator-relation failures");
  dsuite->add_option("--p", p)->required();
  dsuite->add_option("--m", m)->required();
  dsuite->add_option("--deg", deg, "x-degree bound");
  dsuite->callback([&] { result["failures"] = drw_relation_failures(p, m, deg); });
  auto* dcart = drw->add_subcommand("to-cartier", "package as a Cartier complex");
  dcart->add_option("--p", p)->required();
  dcart->add_option("--m", m)->required();
  dcart->add_option("--deg", deg, "x-degree bound");
  dcart->add_option("--twist", twist, "weight twist");
  dcart->callback([&] {
    auto c = to_cartier(drw_complex(p, m, deg), twist);
    result["complex"] = json_of_cartier(c);
    result["report"] = json_of_report(verify_cartier(c));
  });

  // ---- dieudonne ----
  auto* dd = app.add_subcommand("dieudonne", "F-V modules over W_k(F_p)");
  dd->require_subcommand(1);
  auto* dcat = dd->add_subcommand("catalog", "standard examples with diagnostics");
  dcat->add_option("--p", p)->required();
  dcat->add_option("--k", k, "truncation");
  dcat->callback([&] {
    Json mods = Json::object();
    std::vector<std::pair<std::string, DieudonneModule>> cat = {
        {"etale_rank1", etale_rank1(p, k)},
        {"formal_rank1", formal_rank1(p, k)},
        {"supersingular", supersingular_dieudonne(p, k)}};
    for (const auto& [name, mod] : cat) {
      Json e = json_of_dieudonne(mod);
      e["formal"] = is_formal(mod);
      e["slopes"] = json_of_slopes(newton_slopes(mod))["slopes"];
      e["endomorphisms"] = hom_dieudonne(mod, mod, k).group.describe();
      mods[name] = std::move(e);
    }
    result["catalog"] = std::move(mods);
  });
  auto* dverify = dd->add_subcommand("verify", "check FV = VF = p");
  dverify->add_option("--in", in1)->required();
  dverify->callback(
      [&] { result = json_of_report(verify_dieudonne(dieudonne_of_json(load_input(in1)))); });
  auto* dslopes = dd->add_subcommand("slopes", "Newton slopes");
  dslopes->add_option("--in", in1)->required();
  dslopes->callback(
      [&] { result = json_of_slopes(newton_slopes(dieudonne_of_json(load_input(in1)))); });
  auto* dhom = dd->add_subcommand("hom", "hom module of two inputs");
  dhom->add_option("--in", in1)->required();
  dhom->add_option("--with", in2)->required();
  dhom->add_option("--depth", depth, "truncation depth");
  dhom->callback([&] {
    auto h = hom_dieudonne(dieudonne_of_json(load_input(in1)),
                           dieudonne_of_json(load_input(in2)), depth);
    result["group"] = json_of_group(h.group);
    result["described"] = h.group.describe();
    result["generators"] = h.basis.size();
  });
  auto* dbridge = dd->add_subcommand("bridge", "compare with the Cartier-side hom");
  dbridge->add_option("--in", in1)->required();
  dbridge->add_option("--with", in2)->required();
  dbridge->add_option("--depth", depth, "truncation depth");
  dbridge->callback([&] {
    result["agree"] = bridge_faithfulness_check(dieudonne_of_json(load_input(in1)),
                                                dieudonne_of_json(load_input(in2)), depth);
  });

  // ---- suite ----
  auto* suite = app.add_subcommand("suite", "named verification suites");
  suite->add_option("--name", suite_name, "acceptance or relations-drw")->required();
  suite->add_option("--p", p);
  suite->add_option("--m", m);
  suite->add_option("--deg", deg, "x-degree bound");
  suite->callback([&] {
    if (suite_name == "acceptance") {
      Json arr = Json::array();
      bool all_as_expected = true;
      for (const auto& r : run_acceptance(seed)) {
        all_as_expected = all_as_expected && r.pass == r.expected_pass;
        arr.push_back(json_of_criterion(r));
      }
      result["results"] = std::move(arr);
      result["as_expected"] = all_as_expected;
      if (!all_as_expected) exit_code = 1;
    } else if (suite_name == "relations-drw") {
      result["failures"] = drw_relation_failures(p, m, deg);
    } else {
      throw SchemaViolation("unknown suite \"" + suite_name + "\"");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const CartierError& e) {
    Json err;
    err["schema"] = "v1";
    err["error"]["kind"] = e.kind;
    err["error"]["message"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["schema"] = "v1";
    err["error"]["kind"] = "Internal";
    err["error"]["message"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 1;
  }

  result["schema"] = "v1";
  if (out_path.empty()) {
    std::cout << result.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << result.dump(2) << "\n";
  }
  return exit_code;
}
