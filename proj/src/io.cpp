#include "rbu3/io.hpp"

#include <fstream>
#include <sstream>

namespace rbu3 {

namespace {

template <class F>
auto guarded(const char* what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string(what) + ": malformed JSON", e.byte);
  } catch (const Json::exception& e) {
    throw Error(std::string(what) + ": " + e.what());
  }
}

std::vector<std::string> string_list(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

Json map_json(const std::map<std::string, std::string>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

std::map<std::string, std::string> string_map(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::map<std::string, std::string>>();
}

}  // namespace

Json operator_to_json(const POperator& op, const std::vector<std::string>& params) {
  Json images = Json::object();
  for (const auto& b : basis_of(op.n())) images[b.name()] = op.image(b).to_string();
  return {{"n", op.n()}, {"weight", op.weight().to_string()}, {"images", images}, {"params", params}};
}

Json operator_to_json(const QOperator& op) { return operator_to_json(to_poly(op), {}); }

OperatorFile operator_from_json(const Json& j) {
  return guarded("operator", [&] {
    const int n = j.value("n", 3);
    const Rational weight = Rational::parse(j.value("weight", std::string("0")));
    OperatorFile f;
    f.params = string_list(j, "params");
    f.op = make_operator(f.params, string_map(j, "images"), n, weight);
    return f;
  });
}

Json order_to_json(const MonomialOrder& ord) {
  switch (ord.kind()) {
    case MonomialOrder::Kind::Lex: return "lex";
    case MonomialOrder::Kind::Grevlex: return "grevlex";
    case MonomialOrder::Kind::Elimination: return {{"elim", ord.block()}};
  }
  return "grevlex";
}

MonomialOrder order_from_json(const Json& j, std::size_t nvars) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "lex") return MonomialOrder::lex(nvars);
    if (s == "grevlex") return MonomialOrder::grevlex(nvars);
    throw Error("unknown monomial order '" + s + "'");
  }
  if (j.is_object() && j.contains("elim")) {
    const auto k = j.at("elim").get<std::size_t>();
    if (k > nvars) throw Error("elimination block larger than the variable count");
    return MonomialOrder::elimination(k, nvars);
  }
  throw Error("monomial order must be \"lex\", \"grevlex\" or {\"elim\": k}");
}

Json system_to_json(const PolySystem& sys) {
  Json gens = Json::array();
  for (const auto& g : sys.generators) gens.push_back(g.to_string());
  return {{"schema", kSchemaVersion},
          {"vars", sys.table ? sys.table->names() : std::vector<std::string>{}},
          {"order", order_to_json(sys.order)},
          {"gens", gens}};
}

PolySystem system_from_json(const Json& j) {
  return guarded("system", [&] {
    const auto vars = j.at("vars").get<std::vector<std::string>>();
    const TablePtr table = make_table(vars);
    std::vector<MultiPoly> gens;
    for (const auto& g : j.at("gens")) gens.push_back(parse_poly(g.get<std::string>(), table));
    const MonomialOrder ord = j.contains("order") ? order_from_json(j.at("order"), vars.size())
                                                  : MonomialOrder::grevlex(vars.size());
    return PolySystem::make(table, gens, ord);
  });
}

Json gb_to_json(const GroebnerBasis& gb) {
  Json j = system_to_json(gb.system);
  Json basis = Json::array();
  for (const auto& g : gb.basis) basis.push_back(g.to_string());
  j["basis"] = basis;
  j["reduced"] = gb.reduced;
  j["unit"] = gb.is_unit();
  // Timings are left out so that the document is reproducible byte for byte.
  j["stats"] = {{"pairs_processed", gb.stats.pairs_processed},
                {"pairs_product_criterion", gb.stats.pairs_product_criterion},
                {"pairs_chain_criterion", gb.stats.pairs_chain_criterion},
                {"zero_reductions", gb.stats.zero_reductions},
                {"reductions", gb.stats.reduction_steps},
                {"peak_basis_size", gb.stats.peak_basis_size}};
  return j;
}

Json map_to_json(const AlgebraMap& m) {
  if (m.is_theta()) return "theta13";
  if (const auto& p = m.params()) {
    return {{"psi",
             {{"alpha", p->alpha.to_string()},
              {"beta", p->beta.to_string()},
              {"gamma", p->gamma.to_string()},
              {"delta", p->delta.to_string()},
              {"epsilon", p->epsilon.to_string()}}}};
  }
  const char* kind = m.kind() == AlgebraMap::Kind::Automorphism ? "automorphism" : "antiautomorphism";
  return {{kind, operator_to_json(m.matrix())}};
}

AlgebraMap map_from_json(const Json& j) {
  return guarded("map", [&] {
    if (j.is_string()) {
      if (j.get<std::string>() == "theta13") return theta13();
      throw Error("unknown map '" + j.get<std::string>() + "'");
    }
    if (j.contains("psi")) {
      const Json& p = j.at("psi");
      AutoParams a;
      auto get = [&](const char* k, Rational& out) {
        if (p.contains(k)) out = Rational::parse(p.at(k).get<std::string>());
      };
      get("alpha", a.alpha);
      get("beta", a.beta);
      get("gamma", a.gamma);
      get("delta", a.delta);
      get("epsilon", a.epsilon);
      return build_psi(a);
    }
    for (const auto& [key, kind] : {std::pair{"automorphism", AlgebraMap::Kind::Automorphism},
                                    std::pair{"antiautomorphism", AlgebraMap::Kind::Antiautomorphism}}) {
      if (j.contains(key)) return AlgebraMap(kind, to_rational(operator_from_json(j.at(key)).op));
    }
    throw Error("map must be \"theta13\", {\"psi\": ...} or an explicit matrix");
  });
}

Json witness_to_json(const Witness& w) {
  Json maps = Json::array();
  for (const auto& m : w.maps) maps.push_back(map_to_json(m));
  return {{"schema", kSchemaVersion}, {"maps", maps}, {"scalar", w.scalar.to_string()}};
}

Witness witness_from_json(const Json& j) {
  return guarded("witness", [&] {
    Witness w;
    for (const auto& m : j.at("maps")) w.maps.push_back(map_from_json(m));
    w.scalar = Rational::parse(j.value("scalar", std::string("1")));
    return w;
  });
}

Json entry_to_json(const CatalogEntry& e) {
  return {{"id", e.id},
          {"params", e.params},
          {"side_conditions", e.side_conditions},
          {"provenance", e.provenance},
          {"operator", operator_to_json(e.op, e.params)}};
}

CatalogEntry entry_from_json(const Json& j) {
  return guarded("catalog entry", [&] {
    CatalogEntry e;
    e.id = j.at("id").get<std::string>();
    e.params = string_list(j, "params");
    e.side_conditions = string_list(j, "side_conditions");
    e.provenance = j.value("provenance", std::string());
    e.op = operator_from_json(j.at("operator")).op;
    return e;
  });
}

Json catalog_to_json(const std::vector<CatalogEntry>& entries) {
  Json list = Json::array();
  for (const auto& e : entries) list.push_back(entry_to_json(e));
  return {{"schema", kSchemaVersion}, {"entries", list}};
}

std::vector<CatalogEntry> catalog_from_json(const Json& j) {
  return guarded("catalog", [&] {
    std::vector<CatalogEntry> out;
    for (const auto& e : j.at("entries")) out.push_back(entry_from_json(e));
    return out;
  });
}

Json verify_report_to_json(const VerifyReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x = {{"id", e.id},
              {"provenance", e.provenance},
              {"params", e.params},
              {"ok", e.ok()},
              {"residual_zero", e.residual_zero},
              {"failing_pairs", e.failing_pairs},
              {"samples", e.samples},
              {"samples_zero", e.samples_zero},
              {"nilpotency", e.nilpotency},
              {"square_zero", e.square_zero},
              {"image_dim", e.image_dim},
              {"unit_image_consistent", e.unit_image_consistent},
              {"lemma3",
               {{"unit_not_in_image", e.lemma3.unit_not_in_image},
                {"r1_zero", e.lemma3.r1_zero},
                {"r1_zero_implies_square_zero", e.lemma3.r1_zero_implies},
                {"power_identity", e.lemma3.power_identity},
                {"r1_cubed_zero", e.lemma3.r1_cubed_zero}}},
              {"closure",
               {{"trials", e.closure.trials},
                {"scaling_failures", e.closure.scaling_failures},
                {"psi_failures", e.closure.psi_failures},
                {"theta_failures", e.closure.theta_failures}}}};
    if (e.first_failure) {
      x["first_failure"] = {{"u", e.first_failure->u},
                            {"v", e.first_failure->v},
                            {"position", e.first_failure->position},
                            {"value", e.first_failure->value}};
    }
    entries.push_back(x);
  }
  return {{"schema", kSchemaVersion},
          {"entries", entries},
          {"passed", r.passed()},
          {"total", r.entries.size()},
          {"rb_index", r.rb.index},
          {"square_nonzero", r.rb.square_nonzero}};
}

Json case_spec_to_json(const CaseSpec& c) {
  Json sols = Json::array();
  for (const auto& s : c.solutions) {
    sols.push_back({{"label", s.label}, {"entry", s.entry}, {"params", s.params}, {"images", map_json(s.images)}});
  }
  return {{"schema", kSchemaVersion},
          {"name", c.name},
          {"title", c.title},
          {"ansatz", c.ansatz},
          {"letters", c.letters},
          {"display", map_json(c.display)},
          {"branch", c.branch},
          {"nonzero", c.nonzero},
          {"relations", c.relations},
          {"full_relations", c.full_relations},
          {"solutions", sols}};
}

CaseSpec case_spec_from_json(const Json& j) {
  return guarded("case spec", [&] {
    CaseSpec c;
    c.name = j.at("name").get<std::string>();
    c.title = j.value("title", std::string());
    c.ansatz = string_list(j, "ansatz");
    c.letters = string_list(j, "letters");
    c.display = string_map(j, "display");
    c.branch = string_list(j, "branch");
    c.nonzero = string_list(j, "nonzero");
    c.relations = string_list(j, "relations");
    c.full_relations = string_list(j, "full_relations");
    if (j.contains("solutions")) {
      for (const auto& s : j.at("solutions")) {
        c.solutions.push_back({s.at("label").get<std::string>(), s.value("entry", std::string()),
                               string_list(s, "params"), string_map(s, "images")});
      }
    }
    return c;
  });
}

Json case_report_to_json(const CaseReport& r) {
  static const char* kinds[] = {"reduction", "relation", "full_relation", "solution"};
  Json items = Json::array();
  for (const auto& i : r.items) {
    items.push_back({{"kind", kinds[static_cast<int>(i.kind)]}, {"text", i.text}, {"pass", i.pass}, {"detail", i.detail}});
  }
  return {{"schema", kSchemaVersion},
          {"name", r.name},
          {"title", r.title},
          {"full", {{"vars", r.full_vars}, {"generators", r.full_generators}, {"basis", r.full_basis},
                    {"completed", r.full_completed}}},
          {"display", {{"vars", r.display_vars}, {"generators", r.display_generators}, {"basis", r.display_basis}}},
          {"aliases", map_json(r.aliases)},
          {"items", items},
          {"ok", r.ok()}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return guarded(path.c_str(), [&] { return Json::parse(ss.str()); });
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << dump(j);
}

}  // namespace rbu3
