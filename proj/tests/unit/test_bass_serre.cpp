#include <doctest.h>

#include "coxrig/bass_serre.hpp"
#include "coxrig/errors.hpp"
#include "coxrig/splitting.hpp"
#include "oracles.hpp"

using namespace coxrig;

namespace {

TreeOfFiniteGroups tree_of(const char* text) {
  return TreeOfFiniteGroups::from_splitting(stallings_splitting(parse_system(text)));
}

// Vertex counts by depth for a two-vertex amalgam with indices d0, d1,
// rooted at vertex 0.
std::vector<std::size_t> two_vertex_counts(std::size_t d0, std::size_t d1, std::size_t radius) {
  std::vector<std::size_t> out{1};
  if (radius >= 1) out.push_back(d0);
  for (std::size_t k = 2; k <= radius; ++k) out.push_back(out.back() * ((k % 2 == 0 ? d1 : d0) - 1));
  return out;
}

}  // namespace

TEST_CASE("ball counts of two-vertex amalgams follow the index recursion") {
  struct Case {
    const char* system;
    std::size_t d0, d1;
  };
  // D2 *_{Z2} D3, D2 *_{Z2} D4, D3 *_{Z2} D3, Z2 * Z2
  for (const auto& c : {Case{"rank 3; m 1 3 = 3; m 2 3 = inf", 2, 3}, Case{"rank 3; m 1 3 = 4; m 2 3 = inf", 2, 4},
                        Case{"rank 3; m 1 2 = 3; m 1 3 = 3; m 2 3 = inf", 3, 3}, Case{"rank 2; m 1 2 = inf", 2, 2}}) {
    CAPTURE(c.system);
    auto t = tree_of(c.system);
    t.validate();
    REQUIRE(t.vertex_groups.size() == 2);
    for (std::size_t r = 0; r <= 5; ++r) CHECK(build_ball(t, r).count_by_depth() == two_vertex_counts(c.d0, c.d1, r));
  }
}

TEST_CASE("every ball edge joins depth k to depth k+1 and stabilizers have edge order") {
  auto t = tree_of("rank 3; m 1 3 = 3; m 2 3 = inf");
  auto ball = build_ball(t, 4);
  CHECK(ball.edges.size() + 1 == ball.vertices.size());
  for (const auto& e : ball.edges) {
    CHECK(ball.vertices[e.child].depth == ball.vertices[e.parent].depth + 1);
    CHECK(e.stabilizer_at_parent.order() == 2);
    CHECK(e.stabilizer_at_child.order() == 2);
  }
}

TEST_CASE("cylinders are connected subtrees") {
  for (const char* s : {"rank 3; m 1 3 = 3; m 2 3 = inf", "rank 3; m 1 2 = 3; m 1 3 = 3; m 2 3 = inf",
                        "rank 4; m 1 2 = 4; m 2 3 = 3; m 3 4 = inf; m 1 4 = inf"}) {
    CAPTURE(s);
    auto t = tree_of(s);
    auto ball = build_ball(t, 4);
    for (const auto& c : cylinders(t, ball)) {
      CHECK(c.connected);
      CHECK_FALSE(c.edges.empty());
    }
  }
}

TEST_CASE("mixed edge orders have no cylinders") {
  // Vertices {1,2,3}, {2,3,4}, {4,5}; edges {2,3} of order 4 and {4} of order 2.
  auto t = tree_of("rank 5; m 1 2 = 3; m 4 5 = 3; m 1 4 = inf; m 1 5 = inf; m 2 5 = inf; m 3 5 = inf");
  REQUIRE(t.edges.size() == 2);
  auto ball = build_ball(t, 2);
  CHECK_THROWS_AS(cylinders(t, ball), MixedEdgeOrders);
}

TEST_CASE("infinite vertex groups are rejected") {
  CHECK_THROWS_AS(tree_of("rank 3; m 1 2 = 3; m 2 3 = 3; m 1 3 = 3"), UnsupportedType);
}

TEST_CASE("edge normalizer images contain the inner automorphisms") {
  for (const char* s : {"rank 3; m 1 3 = 3; m 2 3 = inf", "rank 4; m 1 2 = 3; m 2 3 = 3; m 3 4 = inf",
                        "rank 4; m 1 2 = 4; m 2 3 = 3; m 3 4 = inf; m 1 4 = inf"}) {
    CAPTURE(s);
    auto t = tree_of(s);
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      auto img = edge_normalizer_image(t, e);
      CHECK(img.method == kNormalizerMethod);
      if (!img.complete) continue;
      REQUIRE(img.image_order.has_value());
      CHECK(*img.image_order % img.inner_order == 0);
      CHECK(img.equals_inner == (*img.image_order == img.inner_order));
      CHECK(img.outer_witness.has_value() == !img.equals_inner);
    }
  }
}

TEST_CASE("edge isomorphisms are bijections between the two copies") {
  auto t = tree_of("rank 4; m 1 2 = 3; m 2 3 = 3; m 3 4 = inf");
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    auto f = t.edge_isomorphism(e, t.edges[e].from);
    auto a = t.edge_group(e, t.edges[e].from), b = t.edge_group(e, t.edges[e].to);
    CHECK(f.size() == a.order());
    std::set<Permutation> image;
    for (const auto& [x, y] : f) {
      CHECK(a.contains(x));
      CHECK(b.contains(y));
      image.insert(y);
    }
    CHECK(image.size() == b.order());
  }
}
