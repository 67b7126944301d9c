#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coxrig/cli.hpp"
#include "coxrig/errors.hpp"
#include "coxrig/fingroup.hpp"
#include "coxrig/report.hpp"

namespace py = pybind11;
using namespace coxrig;

namespace {

// Reports cross the boundary as JSON text; the package decodes them.
std::string classify(const std::string& system) {
  auto m = parse_system(system);
  return classification_json(m, classify_components(m)).dump();
}

std::string split(const std::string& system) {
  auto m = parse_system(system);
  return splitting_json(m, stallings_splitting(m)).dump();
}

std::string rigidity(const std::string& system, std::size_t order_bound) {
  RigidityOptions opt;
  opt.order_bound = order_bound;
  return rigidity_json(rigidity_report(parse_system(system), opt)).dump();
}

std::string analyze(const std::string& system, std::size_t order_bound) {
  return analysis_json(parse_system(system), {order_bound}).dump();
}

std::string ball(const std::string& system, std::size_t radius) { return ball_json(parse_system(system), radius).dump(); }

std::optional<std::vector<std::size_t>> reduce(const std::string& system, const std::vector<std::size_t>& word,
                                               std::size_t budget) {
  auto m = parse_system(system);
  Word w;
  for (auto x : word) {
    if (x < 1 || x > m.rank()) throw IndexOutOfRange("letter " + std::to_string(x) + " outside 1.." + std::to_string(m.rank()));
    w.push_back(x - 1);
  }
  auto r = reduce_word(m, w, budget);
  if (!r) return std::nullopt;
  for (auto& x : *r) ++x;
  return r;
}

std::size_t group_order(const std::vector<std::string>& generators, std::size_t bound) {
  std::size_t degree = 1;
  for (const auto& g : generators) degree = std::max(degree, Permutation::max_point(g));
  std::vector<Permutation> gens;
  for (const auto& g : generators) gens.push_back(Permutation::parse_cycles(g, degree));
  return FinGroup(gens, degree, bound).order();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coxeter group splittings, edge-normalizer checks and rigidity reports";

  auto base = py::register_exception<Error>(m, "CoxrigError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidMatrix>(m, "InvalidMatrix", base.ptr());
  py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", base.ptr());
  py::register_exception<UnsupportedType>(m, "UnsupportedType", base.ptr());
  py::register_exception<OrderBoundExceeded>(m, "OrderBoundExceeded", base.ptr());

  m.def("normalize_system", [](const std::string& s) { return parse_system(s).to_text(); }, py::arg("system"));
  m.def("classify", &classify, py::arg("system"));
  m.def("split", &split, py::arg("system"));
  m.def("rigidity", &rigidity, py::arg("system"), py::arg("order_bound") = kDefaultOrderBound);
  m.def("analyze", &analyze, py::arg("system"), py::arg("order_bound") = kDefaultOrderBound);
  m.def("ball", &ball, py::arg("system"), py::arg("radius") = kDefaultRadius);
  m.def("reduce_word", &reduce, py::arg("system"), py::arg("word"), py::arg("budget") = kDefaultWordBudget,
        "Reduced form of a 1-based word, or None when the budget runs out.");
  m.def("verify_counterexample", [] { return checklist_json(verify_counterexample()).dump(); });
  m.def("verify_dihedral", [] { return checklist_json(verify_dihedral_example()).dump(); });
  m.def("counterexample_system", [](bool twisted) { return counterexample_system(twisted).to_text(); },
        py::arg("twisted") = false);
  m.def("group_order", &group_order, py::arg("generators"), py::arg("bound") = kDefaultOrderBound);
  m.def("run_cli", &run_cli, py::arg("args"));
}
