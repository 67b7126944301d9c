#include <doctest.h>

#include <algorithm>
#include <random>

#include "coxrig/casework.hpp"
#include "coxrig/rigidity.hpp"
#include "oracles.hpp"

using namespace coxrig;

namespace {

bool cites(const RigidityReport& r, const char* tag) {
  return std::find(r.cited.begin(), r.cited.end(), tag) != r.cited.end();
}

}  // namespace

TEST_CASE("the (2,3,inf) triangle is covered through a trivial Out") {
  auto r = rigidity_report(parse_system("rank 3; m 1 3 = 3; m 2 3 = inf"));
  CHECK(r.overall == Overall::kTorsionRigid);
  CHECK(to_string(r.overall) == "TorsionRigid-by-Thm-1.6");
  REQUIRE(r.edges.size() == 1);
  CHECK(r.edges[0].reason == EdgeVerdict::Reason::kTrivialOut);
  CHECK(cites(r, kTagMainTheorem));
  CHECK(cites(r, kTagTrichotomy));
  CHECK(r.theorem1_trichotomy);
}

TEST_CASE("non-hyperbolic inputs are not covered") {
  auto r = rigidity_report(oracle::triangle(4, 4, 2));
  CHECK(r.overall == Overall::kNotCovered);
  CHECK_FALSE(r.moussong.hyperbolic);
  CHECK_FALSE(cites(r, kTagMainTheorem));
}

TEST_CASE("one-ended hyperbolic groups are rigid") {
  for (const char* s : {"rank 3; m 1 2 = 3; m 1 3 = 3; m 2 3 = 4",
                        "rank 5; m 1 2 = inf; m 2 3 = inf; m 3 4 = inf; m 4 5 = inf; m 1 5 = inf"}) {
    auto r = rigidity_report(parse_system(s));
    REQUIRE(r.splitting.nodes.size() == 1);
    CHECK(r.overall == Overall::kTorsionRigid);
    CHECK(cites(r, kTagOneEnded));
  }
}

TEST_CASE("the counterexample fails the edge hypothesis with a witness") {
  auto r = rigidity_report(counterexample_system());
  CHECK(r.overall == Overall::kHypothesisFails);
  REQUIRE(r.edges.size() == 1);
  const auto& e = r.edges[0];
  CHECK(e.kind == EdgeVerdict::Kind::kFails);
  CHECK(e.generators == oracle::subset({1, 3, 5, 7, 9}));
  REQUIRE(e.normalizer.has_value());
  CHECK(e.normalizer->image_order == std::optional<std::uint64_t>(120));
  CHECK(e.normalizer->inner_order == 1);
  CHECK(e.witness.size() == 5);
}

TEST_CASE("overall verdict on hyperbolic inputs is rigid iff every edge holds") {
  std::mt19937_64 rng(41);
  const Label labels[] = {2, 2, 3, 4, 5, kInfinity, kInfinity};
  std::uniform_int_distribution<std::size_t> pick(0, 6);
  int covered = 0;
  for (int trial = 0; trial < 60; ++trial) {
    CoxeterMatrix m(2 + trial % 5);
    for (std::size_t i = 0; i < m.rank(); ++i)
      for (std::size_t j = i + 1; j < m.rank(); ++j) m.set(i, j, labels[pick(rng)]);
    CAPTURE(m.to_text());
    auto r = rigidity_report(m);
    CHECK(r.edges.size() == r.splitting.edges.size());
    if (!r.moussong.hyperbolic) {
      CHECK(r.overall == Overall::kNotCovered);
      continue;
    }
    bool all_hold = std::all_of(r.edges.begin(), r.edges.end(),
                                [](const EdgeVerdict& e) { return e.kind == EdgeVerdict::Kind::kHolds; });
    CHECK((r.overall == Overall::kTorsionRigid) == all_hold);
    bool any_fail = std::any_of(r.edges.begin(), r.edges.end(),
                                [](const EdgeVerdict& e) { return e.kind == EdgeVerdict::Kind::kFails; });
    CHECK((r.overall == Overall::kHypothesisFails) == any_fail);
    if (is_even(m))
      for (const auto& e : r.edges) CHECK(e.reason == EdgeVerdict::Reason::kEvenRetraction);
    covered += r.overall == Overall::kTorsionRigid;
  }
  CHECK(covered > 0);
}

TEST_CASE("edge_condition matches the report entry") {
  auto m = parse_system("rank 4; m 1 2 = 3; m 2 3 = 3; m 3 4 = inf");
  auto r = rigidity_report(m);
  for (std::size_t e = 0; e < r.edges.size(); ++e) {
    auto v = edge_condition(m, r.splitting, e);
    CHECK(v.kind == r.edges[e].kind);
    CHECK(v.reason == r.edges[e].reason);
  }
}
