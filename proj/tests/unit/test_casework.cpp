#include <doctest.h>

#include <set>

#include "coxrig/casework.hpp"
#include "coxrig/classification.hpp"

using namespace coxrig;

TEST_CASE("counterexample generators and embeddings") {
  const auto& d = counterexample_data();
  CHECK(d.a.degree() == 14);
  CHECK(d.b.degree() == 11);
  CHECK(d.c.generators().size() == 5);
  CHECK(d.c.order() == 32);
  for (const auto* map : {&d.i, &d.j, &d.k}) {
    CHECK(std::set<std::size_t>(map->begin(), map->end()).size() == 5);
  }
  // Images of C commute pairwise and are involutions.
  for (const auto& [g, marked] : {std::pair{&d.a, &d.a_marked}, std::pair{&d.b, &d.b_marked}})
    for (auto x : *marked) {
      const auto& px = g->generators()[x];
      CHECK((px * px).is_identity());
      for (auto y : *marked) CHECK(px * g->generators()[y] == g->generators()[y] * px);
    }
  CHECK(d.kappa * d.alpha * d.kappa.inverse() == d.beta * d.kappa);
  CHECK(d.beta_prime == d.alpha_prime * d.kappa);
}

TEST_CASE("the glued system has the expected shape") {
  auto g = counterexample_system();
  auto h = counterexample_system(true);
  CHECK(g.rank() == 15);
  CHECK(h.rank() == 15);
  CHECK_FALSE(g == h);
  CHECK(moussong_hyperbolic(g).hyperbolic);
}

TEST_CASE("checklists pass and every item is anchored") {
  for (const auto& c : {verify_counterexample(), verify_dihedral_example()}) {
    CAPTURE(c.name);
    CHECK(c.all_passed());
    std::set<std::string> ids;
    for (const auto& item : c.items) {
      CHECK_FALSE(item.anchor.empty());
      CHECK_FALSE(item.detail.empty());
      CHECK(ids.insert(item.id).second);
    }
  }
}

TEST_CASE("normality of the edge group is reported, not required") {
  auto c = verify_counterexample();
  bool found = false;
  for (const auto& item : c.items)
    if (item.id == "info-normality") {
      found = true;
      CHECK(item.informational);
    }
  CHECK(found);
}
