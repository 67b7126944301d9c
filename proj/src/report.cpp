#include "coxrig/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "coxrig/errors.hpp"

namespace coxrig {

namespace {

Json header(const char* kind) { return Json{{"kind", kind}, {"version", kReportVersion}}; }

Json perm_list(const std::vector<Permutation>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_cycles());
  return out;
}

}  // namespace

Json order_json(const Order& o) {
  if (o <= Order(std::uint64_t{1} << 53)) return o.convert_to<std::uint64_t>();
  return o.str();
}

Json subset_json(GenSubset s) {
  Json out = Json::array();
  for (auto i : s.indices()) out.push_back(i + 1);
  return out;
}

Json matrix_json(const CoxeterMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.rank(); ++j) {
      if (is_infinite(m(i, j)))
        row.push_back("inf");
      else
        row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return Json{{"rank", m.rank()}, {"text", m.to_text()}, {"matrix", std::move(rows)}};
}

Json classification_json(const CoxeterMatrix& m, const Classification& c) {
  Json comps = Json::array();
  for (const auto& comp : c.components) {
    Json j{{"generators", subset_json(comp.generators)}, {"class", to_string(comp.cls.kind)}};
    j["type"] = comp.cls.finite ? Json(comp.cls.finite->name())
                                : comp.cls.affine ? Json(comp.cls.affine->name()) : Json(nullptr);
    j["order"] = comp.cls.order ? order_json(*comp.cls.order) : Json(nullptr);
    if (comp.cls.finite) j["verified_at_desk_scale"] = order_verified_at_desk_scale(*comp.cls.finite);
    comps.push_back(std::move(j));
  }
  auto out = header("classification");
  out["system"] = matrix_json(m);
  out["components"] = std::move(comps);
  out["theorem1_hypothesis"] = c.theorem1_hypothesis;
  out["moussong"] = moussong_json(moussong_hyperbolic(m));
  return out;
}

Json moussong_json(const MoussongResult& r) {
  Json out{{"hyperbolic", r.hyperbolic}};
  out["affine_witness"] = r.affine_witness ? subset_json(*r.affine_witness) : Json(nullptr);
  out["commuting_witness"] = r.commuting_witness
                                 ? Json::array({subset_json(r.commuting_witness->first), subset_json(r.commuting_witness->second)})
                                 : Json(nullptr);
  return out;
}

Json splitting_json(const CoxeterMatrix& m, const SplitTree& t) {
  Json nodes = Json::array(), edges = Json::array();
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    Json j{{"id", i}, {"generators", subset_json(n.generators)}, {"finite", n.finite}};
    auto o = spherical_order(m, n.generators);
    j["order"] = o ? order_json(*o) : Json(nullptr);
    j["even"] = is_even(m, n.generators);
    j["one_ended"] = n.one_ended ? Json(*n.one_ended) : Json(nullptr);
    nodes.push_back(std::move(j));
  }
  for (const auto& e : t.edges) {
    Json j{{"from", e.from}, {"to", e.to}, {"generators", subset_json(e.generators)}};
    j["order"] = order_json(*spherical_order(m, e.generators));
    edges.push_back(std::move(j));
  }
  auto out = header("splitting");
  out["system"] = matrix_json(m);
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  out["even_vertex_check"] = even_vertex_check(m, t);
  return out;
}

Json vc_type_json(const VCType& v) {
  Json out{{"type", to_string(v.kind)}};
  if (v.kind == VCType::Kind::kDihedral)
    out["triple"] = Json{{"A", subset_json(*v.a)}, {"C", subset_json(*v.c)}, {"B", subset_json(*v.b)}};
  return out;
}

Json edge_verdict_json(const EdgeVerdict& v) {
  Json out{{"edge", v.edge}, {"generators", subset_json(v.generators)}};
  out["order"] = v.order ? Json(*v.order) : Json(nullptr);
  out["verdict"] = to_string(v.kind);
  out["reason"] = v.reason == EdgeVerdict::Reason::kNone ? Json(nullptr) : Json(to_string(v.reason));
  out["detail"] = v.detail;
  out["witness"] = v.witness;
  if (v.normalizer) {
    const auto& n = *v.normalizer;
    Json nj{{"method", n.method}, {"complete", n.complete}, {"reason", n.reason}};
    nj["image_order"] = n.image_order ? Json(*n.image_order) : Json(nullptr);
    nj["inner_order"] = n.inner_order;
    nj["equals_inner"] = n.equals_inner;
    nj["states"] = n.states;
    nj["support"] = n.support;
    nj["edge_generators"] = perm_list(n.edge_generators);
    out["normalizer_image"] = std::move(nj);
  } else {
    out["normalizer_image"] = nullptr;
  }
  return out;
}

Json rigidity_json(const RigidityReport& r) {
  auto out = header("rigidity");
  out["system"] = matrix_json(r.splitting.matrix);
  out["splitting"] = splitting_json(r.splitting.matrix, r.splitting);
  out["moussong"] = moussong_json(r.moussong);
  Json edges = Json::array();
  for (const auto& v : r.edges) edges.push_back(edge_verdict_json(v));
  out["edges"] = std::move(edges);
  out["theorem1_trichotomy"] = r.theorem1_trichotomy;
  out["overall"] = to_string(r.overall);
  out["cited"] = r.cited;
  out["notes"] = r.notes;
  return out;
}

Json checklist_json(const Checklist& c) {
  auto out = header("checklist");
  out["name"] = c.name;
  Json items = Json::array();
  for (const auto& i : c.items)
    items.push_back(Json{{"id", i.id},
                         {"anchor", i.anchor},
                         {"passed", i.passed},
                         {"informational", i.informational},
                         {"detail", i.detail}});
  out["items"] = std::move(items);
  out["all_passed"] = c.all_passed();
  return out;
}

Json analysis_json(const CoxeterMatrix& m, const AnalysisOptions& opt) {
  auto out = header("analysis");
  out["system"] = matrix_json(m);
  auto cls = classify_components(m);
  Json c = classification_json(m, cls);
  out["components"] = c["components"];
  out["theorem1_hypothesis"] = cls.theorem1_hypothesis;
  out["finite"] = m.rank() == 0 || is_spherical(m, m.all());
  auto order = spherical_order(m, m.all());
  out["order"] = order ? order_json(*order) : Json(nullptr);
  out["even"] = is_even(m);
  out["two_spherical"] = is_two_spherical(m);
  auto fs = max_finite_special_order(m);
  Json maximal = Json::array();
  for (auto s : fs.maximal_sphericals) maximal.push_back(subset_json(s));
  out["finite_subgroups"] = Json{{"max_order", order_json(fs.max_order)}, {"maximal_sphericals", std::move(maximal)}};
  out["vc_type"] = vc_type_json(vc_type(m));
  RigidityOptions ro;
  ro.order_bound = opt.order_bound;
  auto r = rigidity_report(m, ro);
  out["splitting"] = splitting_json(m, r.splitting);
  out["rigidity"] = rigidity_json(r);
  return out;
}

Json ball_json(const CoxeterMatrix& m, std::size_t radius, std::size_t order_bound) {
  auto split = stallings_splitting(m);
  auto tree = TreeOfFiniteGroups::from_splitting(split, order_bound);
  auto ball = build_ball(tree, radius);
  auto out = header("ball");
  out["system"] = matrix_json(m);
  out["radius"] = radius;
  out["splitting"] = splitting_json(m, split);
  out["vertex_count"] = ball.vertices.size();
  out["edge_count"] = ball.edges.size();
  out["count_by_depth"] = ball.count_by_depth();
  Json vertices = Json::array();
  for (const auto& v : ball.vertices) {
    Json j{{"quotient_vertex", v.quotient_vertex}, {"depth", v.depth}, {"name", v.name}};
    j["parent_edge"] = v.parent_edge ? Json(*v.parent_edge) : Json(nullptr);
    vertices.push_back(std::move(j));
  }
  out["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const auto& e : ball.edges)
    edges.push_back(Json{{"parent", e.parent},
                         {"child", e.child},
                         {"quotient_edge", e.quotient_edge},
                         {"coset_rep", e.coset_rep.to_cycles()},
                         {"stabilizer_order", e.stabilizer_at_child.order()}});
  out["edges"] = std::move(edges);
  try {
    Json cyl = Json::array();
    for (const auto& c : cylinders(tree, ball))
      cyl.push_back(Json{{"stabilizer_order", c.stabilizer_order},
                         {"edges", c.edges},
                         {"stabilizer_generators", perm_list(c.stabilizer_generators)},
                         {"connected", c.connected}});
    out["cylinders"] = std::move(cyl);
    out["cylinders_error"] = nullptr;
  } catch (const MixedEdgeOrders& e) {
    out["cylinders"] = nullptr;
    out["cylinders_error"] = e.what();
  }
  return out;
}

Json reduce_json(const CoxeterMatrix& m, const Word& w, std::size_t budget) {
  auto out = header("reduce");
  out["system"] = matrix_json(m);
  out["input"] = word_to_string(w);
  out["budget"] = budget;
  WordOracle oracle(m, budget);
  auto r = oracle.reduce(w);
  if (!r) {
    out["status"] = "budget-exhausted";
    out["reduced"] = nullptr;
    out["length"] = nullptr;
    out["deletion_witness"] = nullptr;
    return out;
  }
  out["status"] = "ok";
  out["reduced"] = word_to_string(*r);
  out["length"] = r->size();
  try {
    auto d = oracle.deletion_witness(w);
    out["deletion_witness"] = d ? Json::array({d->first + 1, d->second + 1}) : Json(nullptr);
  } catch (const BudgetExhausted&) {
    out["status"] = "budget-exhausted";
    out["deletion_witness"] = nullptr;
  }
  return out;
}

// ---- schema ---------------------------------------------------------------

namespace {

// Field types: "string", "integer", "boolean", "order" (integer or decimal
// string), "array", "object", "any"; a trailing '?' allows null.
struct Field {
  const char* name;
  const char* type;
};

const std::vector<Field>& schema_for(const std::string& kind) {
  static const std::map<std::string, std::vector<Field>> table{
      {"classification",
       {{"system", "object"}, {"components", "array"}, {"theorem1_hypothesis", "boolean"}, {"moussong", "object"}}},
      {"splitting",
       {{"system", "object"}, {"nodes", "array"}, {"edges", "array"}, {"even_vertex_check", "boolean"}}},
      {"rigidity",
       {{"system", "object"},
        {"splitting", "object"},
        {"moussong", "object"},
        {"edges", "array"},
        {"theorem1_trichotomy", "boolean"},
        {"overall", "string"},
        {"cited", "array"},
        {"notes", "array"}}},
      {"analysis",
       {{"system", "object"},
        {"components", "array"},
        {"theorem1_hypothesis", "boolean"},
        {"finite", "boolean"},
        {"order", "order?"},
        {"even", "boolean"},
        {"two_spherical", "boolean"},
        {"finite_subgroups", "object"},
        {"vc_type", "object"},
        {"splitting", "object"},
        {"rigidity", "object"}}},
      {"ball",
       {{"system", "object"},
        {"radius", "integer"},
        {"splitting", "object"},
        {"vertex_count", "integer"},
        {"edge_count", "integer"},
        {"count_by_depth", "array"},
        {"vertices", "array"},
        {"edges", "array"},
        {"cylinders", "array?"},
        {"cylinders_error", "string?"}}},
      {"reduce",
       {{"system", "object"},
        {"input", "string"},
        {"budget", "integer"},
        {"status", "string"},
        {"reduced", "string?"},
        {"length", "integer?"},
        {"deletion_witness", "array?"}}},
      {"checklist", {{"name", "string"}, {"items", "array"}, {"all_passed", "boolean"}}},
      {"fingroup",
       {{"degree", "integer"},
        {"generators", "array"},
        {"order", "integer"},
        {"abelian", "boolean"},
        {"center_order", "integer"},
        {"automorphisms", "object?"},
        {"domain", "object?"},
        {"subgroup", "object?"},
        {"diamond", "object?"}}},
      {"batch", {{"reports", "array"}}},
      {"error", {{"error", "string"}, {"input_error", "boolean"}}},
  };
  static const std::vector<Field> none;
  auto it = table.find(kind);
  return it == table.end() ? none : it->second;
}

bool has_type(const Json& v, std::string type) {
  if (!type.empty() && type.back() == '?') {
    if (v.is_null()) return true;
    type.pop_back();
  }
  if (type == "any") return true;
  if (type == "string") return v.is_string();
  if (type == "integer") return v.is_number_integer();
  if (type == "boolean") return v.is_boolean();
  if (type == "array") return v.is_array();
  if (type == "object") return v.is_object();
  if (type == "order") return v.is_number_integer() || (v.is_string() && !v.get<std::string>().empty());
  return false;
}

void check_fields(const Json& j, const std::vector<Field>& fields, const std::string& where,
                  std::vector<std::string>& errors) {
  for (const auto& f : fields) {
    if (!j.contains(f.name))
      errors.push_back(where + ": missing field '" + f.name + "'");
    else if (!has_type(j[f.name], f.type))
      errors.push_back(where + ": field '" + f.name + "' is not " + f.type);
  }
}

void check_items(const Json& arr, const std::vector<Field>& fields, const std::string& where,
                 std::vector<std::string>& errors) {
  if (!arr.is_array()) return;
  for (std::size_t i = 0; i < arr.size(); ++i) check_fields(arr[i], fields, where + "[" + std::to_string(i) + "]", errors);
}

}  // namespace

std::vector<std::string> schema_errors(const Json& j) {
  std::vector<std::string> errors;
  if (!j.is_object()) return {"report is not an object"};
  if (!j.contains("kind") || !j["kind"].is_string()) return {"missing string field 'kind'"};
  if (!j.contains("version") || j["version"] != kReportVersion) errors.push_back("missing or wrong 'version'");
  const auto kind = j["kind"].get<std::string>();
  const auto& fields = schema_for(kind);
  if (fields.empty()) return {"unknown kind '" + kind + "'"};
  check_fields(j, fields, kind, errors);
  if (!errors.empty()) return errors;

  static const std::vector<Field> system{{"rank", "integer"}, {"text", "string"}, {"matrix", "array"}};
  static const std::vector<Field> component{{"generators", "array"}, {"class", "string"}, {"type", "string?"},
                                            {"order", "order?"}};
  static const std::vector<Field> node{{"id", "integer"}, {"generators", "array"}, {"finite", "boolean"},
                                       {"order", "order?"}, {"even", "boolean"}, {"one_ended", "string?"}};
  static const std::vector<Field> edge{{"from", "integer"}, {"to", "integer"}, {"generators", "array"},
                                       {"order", "order"}};
  static const std::vector<Field> verdict{{"edge", "integer"},   {"generators", "array"}, {"order", "integer?"},
                                          {"verdict", "string"}, {"reason", "string?"},   {"detail", "string"},
                                          {"witness", "array"},  {"normalizer_image", "object?"}};
  static const std::vector<Field> item{{"id", "string"}, {"anchor", "string"}, {"passed", "boolean"},
                                       {"informational", "boolean"}, {"detail", "string"}};

  if (j.contains("system") && j["system"].is_object()) check_fields(j["system"], system, kind + ".system", errors);
  if (kind == "classification" || kind == "analysis") check_items(j["components"], component, kind + ".components", errors);
  if (kind == "splitting") {
    check_items(j["nodes"], node, "splitting.nodes", errors);
    check_items(j["edges"], edge, "splitting.edges", errors);
  }
  if (kind == "rigidity") {
    check_items(j["edges"], verdict, "rigidity.edges", errors);
    static const std::vector<std::string> overall{"TorsionRigid-by-Thm-1.6", "NotCovered", "HypothesisFails"};
    if (std::find(overall.begin(), overall.end(), j["overall"].get<std::string>()) == overall.end())
      errors.push_back("rigidity: unknown overall verdict");
  }
  if (kind == "checklist") check_items(j["items"], item, "checklist.items", errors);
  // Nested reports are checked recursively.
  for (const char* key : {"splitting", "rigidity"})
    if (j.contains(key) && j[key].is_object() && j[key].contains("kind"))
      for (auto& e : schema_errors(j[key])) errors.push_back(kind + "." + key + ": " + e);
  if (kind == "batch")
    for (std::size_t i = 0; i < j["reports"].size(); ++i)
      for (auto& e : schema_errors(j["reports"][i])) errors.push_back("batch[" + std::to_string(i) + "]: " + e);
  return errors;
}

// ---- text -----------------------------------------------------------------

namespace {

bool is_scalar_list(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (is_scalar_list(j)) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + scalar(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !is_scalar_list(v) && !v.empty()) {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      } else {
        os << pad << k << ": " << scalar(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_structured() && !is_scalar_list(j[i])) {
        os << pad << "- #" << i << "\n";
        render(os, j[i], indent + 2);
      } else {
        os << pad << "- " << scalar(j[i]) << "\n";
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream os;
  render(os, j, 0);
  return os.str();
}

}  // namespace coxrig
