#include "coxrig/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "coxrig/errors.hpp"
#include "coxrig/report.hpp"

namespace coxrig::cli {

namespace {

struct Options {
  std::string system, file, format = "json", output, word;
  std::size_t word_budget = kDefaultWordBudget;
  std::size_t order_bound = kDefaultOrderBound;
  std::size_t radius = kDefaultRadius;
  std::vector<std::string> gens, subgroup;
  std::string diamond_x, diamond_y;
  std::size_t degree = 0;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Env values are defaults; flags given on the command line win.
void apply_env(Options& o) {
  auto read = [](const char* name, std::size_t& target) {
    const char* v = std::getenv(name);
    if (!v || !*v) return;
    try {
      std::size_t pos = 0;
      auto x = std::stoull(v, &pos);
      if (pos != std::string(v).size() || x == 0) throw std::invalid_argument(name);
      target = x;
    } catch (const std::exception&) {
      throw InputError(std::string("bad value for ") + name + ": " + v);
    }
  };
  read("COXRIG_WORD_BUDGET", o.word_budget);
  read("COXRIG_ORDER_BOUND", o.order_bound);
  read("COXRIG_RADIUS", o.radius);
}

bool is_input_error(const std::exception& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidMatrix*>(&e) ||
         dynamic_cast<const IndexOutOfRange*>(&e) || dynamic_cast<const InputError*>(&e) ||
         dynamic_cast<const std::invalid_argument*>(&e);
}

Json error_record(const std::string& message, bool input) {
  return Json{{"kind", "error"}, {"version", kReportVersion}, {"error", message}, {"input_error", input}};
}

struct Outcome {
  Json report;
  int code = kOk;
};

Outcome analyze_one(const std::string& sub, const CoxeterMatrix& m, const Options& o) {
  if (sub == "analyze") {
    AnalysisOptions ao;
    ao.order_bound = o.order_bound;
    return {analysis_json(m, ao), kOk};
  }
  if (sub == "classify") return {classification_json(m, classify_components(m)), kOk};
  if (sub == "split") {
    auto j = splitting_json(m, stallings_splitting(m));
    j["vc_type"] = vc_type_json(vc_type(m));
    return {j, kOk};
  }
  if (sub == "rigidity") {
    RigidityOptions ro;
    ro.order_bound = o.order_bound;
    return {rigidity_json(rigidity_report(m, ro)), kOk};
  }
  if (sub == "reduce") {
    auto j = reduce_json(m, parse_word(o.word, m.rank()), o.word_budget);
    return {j, j["status"] == "ok" ? kOk : kAnalysisFailure};
  }
  if (sub == "ball") return {ball_json(m, o.radius, o.order_bound), kOk};
  throw std::logic_error("unhandled subcommand " + sub);
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    bool input = is_input_error(e);
    return {error_record(e.what(), input), input ? kInputError : kAnalysisFailure};
  }
}

std::vector<Permutation> parse_perms(const std::vector<std::string>& texts, std::size_t degree) {
  std::vector<Permutation> out;
  for (const auto& t : texts) out.push_back(Permutation::parse_cycles(t, degree));
  return out;
}

Outcome fingroup_report(const Options& o) {
  if (o.gens.empty()) throw InputError("fingroup needs at least one --gen");
  std::size_t degree = o.degree;
  for (const auto* list : {&o.gens, &o.subgroup})
    for (const auto& t : *list) degree = std::max(degree, Permutation::max_point(t));
  for (const auto* t : {&o.diamond_x, &o.diamond_y})
    if (!t->empty()) degree = std::max(degree, Permutation::max_point(*t));
  if (degree == 0) degree = 1;
  if (degree > 0xFFFF) throw InputError("degree too large");

  FinGroup g(parse_perms(o.gens, degree), degree, o.order_bound);
  Json j{{"kind", "fingroup"}, {"version", kReportVersion}, {"degree", degree}};
  Json gens = Json::array();
  for (const auto& p : g.generators()) gens.push_back(p.to_cycles());
  j["generators"] = gens;
  j["order"] = g.order();
  bool abelian = true;
  for (const auto& a : g.generators())
    for (const auto& b : g.generators()) abelian &= a * b == b * a;
  j["abelian"] = abelian;
  j["center_order"] = center(g).order();
  if (g.order() <= kAutomorphismOrderBound) {
    auto aut = automorphism_group(g);
    j["automorphisms"] = Json{{"order", aut.order}, {"inner_order", aut.inner.order()}, {"out_trivial", aut.out_trivial}};
  } else {
    j["automorphisms"] = nullptr;
  }
  if (g.order() <= 720) {
    auto d = domain_report(g);
    Json dj{{"is_domain", d.is_domain}, {"self_orthogonal_count", d.self_orthogonal.size()}};
    dj["zero_divisor_witness"] =
        d.zero_divisor_witness
            ? Json::array({d.zero_divisor_witness->first.to_cycles(), d.zero_divisor_witness->second.to_cycles()})
            : Json(nullptr);
    j["domain"] = dj;
  } else {
    j["domain"] = nullptr;
  }
  if (!o.subgroup.empty()) {
    FinGroup h(parse_perms(o.subgroup, degree), degree, o.order_bound);
    bool sub = is_subgroup(h, g);
    Json hj{{"order", h.order()}, {"is_subgroup", sub}};
    hj["is_normal"] = sub ? Json(is_normal(h, g)) : Json(nullptr);
    hj["normalizer_order"] = sub ? Json(normalizer(g, h).order()) : Json(nullptr);
    hj["index"] = sub ? Json(g.order() / h.order()) : Json(nullptr);
    j["subgroup"] = hj;
  } else {
    j["subgroup"] = nullptr;
  }
  if (!o.diamond_x.empty() || !o.diamond_y.empty()) {
    if (o.diamond_x.empty() || o.diamond_y.empty()) throw InputError("--diamond-x and --diamond-y go together");
    auto x = Permutation::parse_cycles(o.diamond_x, degree), y = Permutation::parse_cycles(o.diamond_y, degree);
    if (!g.contains(x) || !g.contains(y)) throw InputError("diamond arguments must lie in the group");
    auto dm = diamond(g, x, y);
    Json gens_d = Json::array();
    for (const auto& p : dm.generators()) gens_d.push_back(p.to_cycles());
    j["diamond"] = Json{{"order", dm.order()}, {"generators", gens_d}, {"orthogonal", dm.order() == 1}};
  } else {
    j["diamond"] = nullptr;
  }
  return {j, kOk};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Whole report in one write; --output goes through a temporary and a rename.
bool emit(const std::string& text, const Options& o, std::ostream& out, std::ostream& err) {
  if (o.output.empty()) {
    out << text << std::flush;
    return true;
  }
  const std::string tmp = o.output + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) {
      err << "error: cannot write " << tmp << "\n";
      return false;
    }
  }
  if (std::rename(tmp.c_str(), o.output.c_str()) != 0) {
    err << "error: cannot rename " << tmp << " to " << o.output << "\n";
    std::remove(tmp.c_str());
    return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> split_stanzas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  std::string line;
  auto flush = [&] {
    if (cur.find_first_not_of(" \t\r\n") != std::string::npos) out.push_back(cur);
    cur.clear();
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      flush();
    else
      cur += line + "\n";
  }
  flush();
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  try {
    apply_env(o);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  CLI::App app{"Coxeter group splittings, rigidity certificates and finite group checks", "coxrig"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> subs{
      {"analyze", "classification, splitting and rigidity report"},
      {"classify", "irreducible components and their types"},
      {"split", "Stallings splitting over finite special subgroups"},
      {"rigidity", "edge-normaliser certificates"},
      {"reduce", "reduce a word by braid moves"},
      {"fingroup", "finite permutation group summary"},
      {"ball", "ball in the Bass-Serre tree and its cylinders"},
      {"verify-counterexample", "checklist for the amalgam counterexample"},
      {"verify-dihedral", "checklist for the dihedral example over Z/11"},
  };
  for (const auto& [name, desc] : subs) {
    auto* s = app.add_subcommand(name, desc);
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("-o,--output", o.output, "write the report to this file");
    const bool takes_system = name != "fingroup" && name != "verify-counterexample" && name != "verify-dihedral";
    if (takes_system) {
      auto* sys = s->add_option("--system", o.system, "inline system, e.g. \"rank 3; m 1 2 = inf\"");
      auto* file = s->add_option("--file", o.file, "batch file, one system per blank-line separated stanza");
      sys->excludes(file);
      file->excludes(sys);
      s->add_option("--order-bound", o.order_bound, "largest group materialised")->check(CLI::PositiveNumber);
    }
    if (name == "reduce") {
      s->add_option("--word", o.word, "1-based letters, space or comma separated")->required();
      s->add_option("--word-budget", o.word_budget, "visited-word budget")->check(CLI::PositiveNumber);
    }
    if (name == "ball") s->add_option("--radius", o.radius, "ball radius");
    if (name == "fingroup") {
      s->add_option("--gen", o.gens, "generator in cycle notation, repeatable")->required();
      s->add_option("--subgroup", o.subgroup, "subgroup generator, repeatable");
      s->add_option("--degree", o.degree, "number of points (default: largest point mentioned)");
      s->add_option("--diamond-x", o.diamond_x, "x for x <> y");
      s->add_option("--diamond-y", o.diamond_y, "y for x <> y");
      s->add_option("--order-bound", o.order_bound, "largest group materialised")->check(CLI::PositiveNumber);
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  Outcome result;
  if (sub == "verify-counterexample" || sub == "verify-dihedral") {
    result = guarded([&] {
      auto c = sub == "verify-counterexample" ? verify_counterexample() : verify_dihedral_example();
      return Outcome{checklist_json(c), c.all_passed() ? kOk : kAnalysisFailure};
    });
  } else if (sub == "fingroup") {
    result = guarded([&] { return fingroup_report(o); });
  } else if (!o.file.empty()) {
    try {
      auto stanzas = split_stanzas(read_file(o.file));
      Json reports = Json::array();
      int code = kOk;
      for (const auto& s : stanzas) {
        auto r = guarded([&] { return analyze_one(sub, parse_system(s), o); });
        reports.push_back(std::move(r.report));
        code = std::max(code, r.code);
      }
      result = {Json{{"kind", "batch"}, {"version", kReportVersion}, {"reports", std::move(reports)}}, code};
    } catch (const InputError& e) {
      result = {error_record(e.what(), true), kInputError};
    }
  } else if (!o.system.empty()) {
    result = guarded([&] { return analyze_one(sub, parse_system(o.system), o); });
  } else {
    err << "error: " << sub << " needs --system or --file\n";
    return kInputError;
  }

  if (result.report.contains("kind") && result.report["kind"] == "error")
    err << "error: " << result.report["error"].get<std::string>() << "\n";
  std::string text = o.format == "text" ? render_text(result.report) : result.report.dump(2) + "\n";
  if (!emit(text, o, out, err)) return kAnalysisFailure;
  return result.code;
}

}  // namespace coxrig::cli
