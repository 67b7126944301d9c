#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coxrig/cli.hpp"
#include "coxrig/report.hpp"

using namespace coxrig;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json parsed(const Result& r) { return Json::parse(r.out); }

constexpr const char* kPgl2 = "rank 3; m 1 3 = 3; m 2 3 = inf";

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("every subcommand emits a record that matches its schema") {
  const std::vector<std::vector<std::string>> invocations{
      {"analyze", "--system", kPgl2},
      {"classify", "--system", "rank 3; m 1 2 = 4; m 1 3 = 4"},
      {"split", "--system", kPgl2},
      {"rigidity", "--system", kPgl2},
      {"reduce", "--system", kPgl2, "--word", "1 3 1 3 1 3"},
      {"ball", "--system", kPgl2, "--radius", "3"},
      {"fingroup", "--gen", "(1 2)", "--gen", "(1 2 3 4)", "--subgroup", "(1 2)"},
      {"verify-counterexample"},
      {"verify-dihedral"},
  };
  for (const auto& args : invocations) {
    CAPTURE(args[0]);
    auto r = run(args);
    CHECK(r.code == 0);
    auto j = parsed(r);
    CHECK(schema_errors(j).empty());
    CHECK(j["version"] == kReportVersion);
    CHECK(Json::parse(j.dump()) == j);
    CHECK(run(args).out == r.out);  // deterministic
  }
}

TEST_CASE("schema violations are detected") {
  auto j = parsed(run({"split", "--system", kPgl2}));
  j.erase("nodes");
  CHECK_FALSE(schema_errors(j).empty());
  CHECK_FALSE(schema_errors(Json{{"kind", "no-such-kind"}}).empty());
  auto k = parsed(run({"classify", "--system", kPgl2}));
  k["theorem1_hypothesis"] = "yes";
  CHECK_FALSE(schema_errors(k).empty());
}

TEST_CASE("classification record fields") {
  auto j = parsed(run({"classify", "--system", "rank 3; m 1 2 = 4; m 1 3 = 4"}));
  CHECK(j["kind"] == "classification");
  REQUIRE(j["components"].size() == 1);
  CHECK(j["components"][0]["class"] == "Affine");
  CHECK(j["components"][0]["generators"] == Json::array({1, 2, 3}));
  CHECK(j["theorem1_hypothesis"].is_boolean());
}

TEST_CASE("input errors exit 2 with an error record") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"classify", "--system", "rank 3; m 1 2 = 0"},
        std::vector<std::string>{"classify", "--system", "rank"},
        std::vector<std::string>{"reduce", "--system", kPgl2, "--word", "1 9"},
        std::vector<std::string>{"classify"},
        std::vector<std::string>{"no-such-command"}}) {
    auto r = run(args);
    CHECK(r.code == cli::kInputError);
    CHECK_FALSE(r.err.empty());
  }
  auto r = run({"classify", "--system", "rank 3; m 1 2 = 0"});
  auto j = parsed(r);
  CHECK(j["kind"] == "error");
  CHECK(j["input_error"] == true);
  CHECK(schema_errors(j).empty());
}

TEST_CASE("an exhausted word budget is its own outcome") {
  auto r = run({"reduce", "--system", "rank 3; m 1 2 = 3; m 2 3 = 3; m 1 3 = 3", "--word",
                "1 2 1 3 2 3 1 2 1", "--word-budget", "2"});
  CHECK(r.code == cli::kAnalysisFailure);
  auto j = parsed(r);
  CHECK(j["status"] == "budget-exhausted");
  CHECK(schema_errors(j).empty());
}

TEST_CASE("environment defaults are overridden by flags") {
  const std::vector<std::string> args{"reduce", "--system", "rank 3; m 1 2 = 3; m 2 3 = 3; m 1 3 = 3", "--word",
                                      "1 2 1 3 2 3 1 2 1"};
  ::setenv("COXRIG_WORD_BUDGET", "2", 1);
  auto limited = run(args);
  auto with_flag = [&] {
    auto a = args;
    a.insert(a.end(), {"--word-budget", "100000"});
    return run(a);
  }();
  ::unsetenv("COXRIG_WORD_BUDGET");
  CHECK(parsed(limited)["status"] == "budget-exhausted");
  CHECK(parsed(with_flag)["status"] == "ok");
}

TEST_CASE("the counterexample rigidity run reports the failure") {
  auto j = parsed(run({"rigidity", "--system", counterexample_system().to_text()}));
  CHECK(j["overall"] == "HypothesisFails");
  REQUIRE(j["edges"].size() == 1);
  CHECK(j["edges"][0]["verdict"] == "Fails");
  CHECK_FALSE(j["edges"][0]["witness"].empty());
}

TEST_CASE("batch files produce one report per stanza") {
  auto path = temp_file("coxrig_batch_test.txt");
  {
    std::ofstream f(path);
    f << kPgl2 << "\n\n"
      << "rank 3; m 1 2 = 4; m 1 3 = 4\n\n\n"
      << "rank 2; m 1 2 = 0\n";
  }
  auto r = run({"classify", "--file", path.string()});
  std::filesystem::remove(path);
  CHECK(r.code == cli::kInputError);
  auto j = parsed(r);
  CHECK(j["kind"] == "batch");
  REQUIRE(j["reports"].size() == 3);
  CHECK(j["reports"][0]["kind"] == "classification");
  CHECK(j["reports"][2]["kind"] == "error");
  CHECK(schema_errors(j).empty());
  CHECK(cli::split_stanzas("a\n\n\nb\n \nc").size() == 3);
}

TEST_CASE("--output writes the report to a file") {
  auto path = temp_file("coxrig_output_test.json");
  auto r = run({"split", "--system", kPgl2, "-o", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  auto j = Json::parse(f);
  std::filesystem::remove(path);
  CHECK(j["kind"] == "splitting");
  CHECK(j["nodes"].size() == 2);
}

TEST_CASE("text rendering mentions the verdict") {
  auto r = run({"rigidity", "--system", kPgl2, "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.find("overall: TorsionRigid-by-Thm-1.6") != std::string::npos);
}

TEST_CASE("checklist subcommands exit 0 when every item passes") {
  auto j = parsed(run({"verify-dihedral"}));
  CHECK(j["kind"] == "checklist");
  for (const auto& item : j["items"]) CHECK(item["passed"] == true);
}

TEST_CASE("large orders are serialized as strings") {
  CHECK(order_json(Order(6)) == 6);
  CHECK(order_json(Order("51090942171709440000")) == "51090942171709440000");
}
