#include <doctest.h>

#include <random>

#include "coxrig/classification.hpp"
#include "coxrig/errors.hpp"
#include "coxrig/fingroup.hpp"
#include "coxrig/perm_model.hpp"
#include "oracles.hpp"

using namespace coxrig;

namespace {

Permutation cyc(const char* text, std::size_t degree) { return Permutation::parse_cycles(text, degree); }

FinGroup symmetric(std::size_t d) {
  std::string long_cycle = "(";
  for (std::size_t i = 1; i <= d; ++i) long_cycle += std::to_string(i) + (i < d ? " " : ")");
  return FinGroup({cyc("(1 2)", d), cyc(long_cycle.c_str(), d)}, d);
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("permutations compose right to left and print as cycles") {
  auto a = cyc("(1 2)", 3), b = cyc("(2 3)", 3);
  CHECK((a * b)(2) == 0);  // b sends 3 to 2, a sends 2 to 1
  CHECK((a * b).to_cycles() == "(1 2 3)");
  CHECK((a * b).order() == 3);
  CHECK(a.conjugate(b) == a * b * a.inverse());
  CHECK(Permutation::max_point("(1 7)(3 4)") == 7);
  CHECK(Permutation(4).to_cycles() == "()");
  CHECK_THROWS(cyc("(1 1)", 3));
}

TEST_CASE("closure orders divide d!") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 40; ++i) {
    std::size_t d = 3 + i % 4;
    FinGroup g({oracle::random_permutation(rng, d), oracle::random_permutation(rng, d)}, d);
    CHECK(factorial(d) % g.order() == 0);
    for (const auto& x : g.elements())
      for (const auto& s : g.generators()) CHECK(g.contains(x * s));
  }
  CHECK(symmetric(5).order() == 120);
}

TEST_CASE("word_of spells out each element") {
  auto g = symmetric(4);
  for (std::size_t i = 0; i < g.order(); ++i) {
    auto p = g.identity();
    for (auto s : g.word_of(i)) p = p * g.generators()[s];
    CHECK(p == g.elements()[i]);
  }
}

TEST_CASE("normalizers contain the subgroup, centralizers commute") {
  std::mt19937_64 rng(4);
  auto g = symmetric(5);
  for (int i = 0; i < 20; ++i) {
    FinGroup h({oracle::random_permutation(rng, 5)}, 5);
    auto n = normalizer(g, h);
    CHECK(is_subgroup(h, n));
    CHECK(is_normal(h, n));
    auto c = centralizer(g, h);
    CHECK(is_subgroup(c, n));
    for (const auto& x : c.elements())
      for (const auto& y : h.generators()) CHECK(x * y == y * x);
  }
  CHECK(center(g).order() == 1);
  CHECK(center(FinGroup({cyc("(1 2 3 4)", 4)}, 4)).order() == 4);
}

TEST_CASE("diamond is symmetric and trivial against the identity") {
  std::mt19937_64 rng(8);
  auto g = symmetric(4);
  for (int i = 0; i < 50; ++i) {
    auto x = oracle::random_permutation(rng, 4), y = oracle::random_permutation(rng, 4);
    CHECK(diamond(g, x, y).same_subgroup(diamond(g, y, x)));
    CHECK(diamond(g, g.identity(), y).order() == 1);
    CHECK(orthogonal(g, x, y) == (diamond(g, x, y).order() == 1));
  }
}

TEST_CASE("S3 and Z/2 have zero divisors, Z/1 does not") {
  auto r = domain_report(symmetric(3));
  CHECK_FALSE(r.is_domain);
  CHECK(r.self_orthogonal.size() == 3);  // identity and the two 3-cycles
  CHECK_FALSE(domain_report(FinGroup({cyc("(1 2)", 2)}, 2)).is_domain);
  CHECK(domain_report(FinGroup::trivial(2)).is_domain);
}

TEST_CASE("inner automorphisms number |G/Z(G)|") {
  std::vector<FinGroup> groups{
      symmetric(3),
      symmetric(4),
      FinGroup({cyc("(1 2 3 4)", 4), cyc("(1 3)", 4)}, 4),  // D4
      FinGroup({cyc("(1 2)", 4), cyc("(3 4)", 4)}, 4),
      FinGroup({cyc("(1 2 3 4 5)", 5)}, 5),
      FinGroup({cyc("(1 2)", 6), cyc("(3 4)", 6), cyc("(5 6)", 6)}, 6),
  };
  const std::uint64_t aut[] = {6, 24, 8, 6, 4, 168};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto a = automorphism_group(groups[i]);
    CHECK(a.order == aut[i]);
    CHECK(a.inner.order() == groups[i].order() / center(groups[i]).order());
    CHECK(a.out_trivial == (a.order == a.inner.order()));
    CHECK(has_outer_automorphism(groups[i]).has_value() == !a.out_trivial);
  }
}

TEST_CASE("permutation models satisfy the Coxeter relations exactly") {
  std::vector<FiniteType> types{FiniteType::A(4), FiniteType::B(4), FiniteType::D(4), FiniteType::D(5),
                                FiniteType::F4(), FiniteType::H(3), FiniteType::I2(7), FiniteType::I2(12)};
  for (const auto& t : types) {
    CAPTURE(t.name());
    auto m = finite_template(t);
    auto model = coxeter_perm_model(m);
    REQUIRE(model);
    CHECK(Order(model->order()) == finite_order(t));
    const auto& g = model->generators();
    for (std::size_t s = 0; s < m.rank(); ++s)
      for (std::size_t u = 0; u < m.rank(); ++u) CHECK((g[s] * g[u]).order() == (s == u ? 1 : m(s, u)));
  }
  CHECK_FALSE(coxeter_perm_model(finite_template(FiniteType::E(6))).has_value());
  CHECK_FALSE(coxeter_perm_model(finite_template(FiniteType::H(4))).has_value());
  CHECK_THROWS_AS(coxeter_perm_model(oracle::path({kInfinity})), UnsupportedType);
}

TEST_CASE("reducible systems get product models") {
  auto m = oracle::direct_sum({oracle::path({3}), oracle::path({4}), CoxeterMatrix(1)});
  auto model = coxeter_perm_model(m);
  REQUIRE(model);
  CHECK(model->order() == 6 * 8 * 2);
}

TEST_CASE("transversals, coset representatives and canonical conjugates") {
  auto g = symmetric(4);
  FinGroup h({cyc("(1 2)", 4)}, 4);
  auto tr = left_transversal(g, h);
  CHECK(tr.size() == 12);
  for (const auto& x : g.elements()) {
    auto r = coset_representative(g, h, x);
    CHECK(h.contains(r.inverse() * x));
  }
  auto canon = canonical_conjugate(g, h);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10; ++i) {
    auto y = g.elements()[rng() % g.order()];
    FinGroup hy({y.conjugate(h.generators()[0])}, 4);
    CHECK(canonical_conjugate(g, hy).subgroup.same_subgroup(canon.subgroup));
  }
}

TEST_CASE("blocks of a product of symmetric groups") {
  FinGroup g({cyc("(1 2)", 7), cyc("(2 3)", 7), cyc("(4 5)", 7), cyc("(5 6)", 7), cyc("(6 7)", 7)}, 7);
  auto b = decompose_blocks(g);
  REQUIRE(b.points.size() == 2);
  CHECK(b.factors[0].order() == 6);
  CHECK(b.factors[1].order() == 24);
}

TEST_CASE("action on a marked set and its failure mode") {
  auto a = cyc("(1 2)", 4), b = cyc("(3 4)", 4);
  auto swap = cyc("(1 3)(2 4)", 4);
  auto img = perm_action_on_marked_set({swap}, {a, b});
  REQUIRE(img.size() == 1);
  CHECK(img[0] == cyc("(1 2)", 2));
  CHECK_THROWS_AS(perm_action_on_marked_set({cyc("(2 3)", 4)}, {a, b}), NotInvariant);
}

TEST_CASE("2x2 matrices mod p") {
  Mat2ModP m1{11, 1, 0, 0, 2};
  CHECK(m1.pow(10) == Mat2ModP::identity(11));
  CHECK(m1.order() == 10);
  CHECK(m1 * m1.inverse() == Mat2ModP::identity(11));
  CHECK(m1.pow(-1) == m1.inverse());
  CHECK_THROWS_AS((Mat2ModP{11, 1, 1, 1, 1}.inverse()), NotInvertible);
  CHECK(multiplicative_order(2, 11) == 10);
  CHECK(multiplicative_order(3, 11) == 5);
  std::map<std::string, Mat2ModP> named{{"M0", {11, 0, 1, 1, 0}}, {"M1", m1}};
  CHECK(evaluate_matrix_product(11, named, "M0 M1 M0") == Mat2ModP{11, 2, 0, 0, 1});
  auto r = matrix_mod_p_check(11, named, {{"x", "M0^2", "I", true}, {"y", "M1", "I", false}});
  CHECK(r == std::vector<bool>{true, true});
}
