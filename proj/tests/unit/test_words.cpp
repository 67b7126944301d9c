#include <doctest.h>

#include <random>

#include "coxrig/coxeter.hpp"
#include "coxrig/errors.hpp"
#include "coxrig/perm_model.hpp"
#include "coxrig/words.hpp"
#include "oracles.hpp"

using namespace coxrig;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t len) {
  std::uniform_int_distribution<std::size_t> letter(0, rank - 1);
  Word w(len);
  for (auto& x : w) x = letter(rng);
  return w;
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_CASE("words parse 1-based and print back") {
  auto w = parse_word("1 3 2", 3);
  CHECK(w == Word{0, 2, 1});
  CHECK(word_to_string(w) == "1 3 2");
  CHECK(parse_word("", 3).empty());
  CHECK_THROWS_AS(parse_word("4", 3), IndexOutOfRange);
  CHECK_THROWS_AS(parse_word("a", 3), ParseError);
}

TEST_CASE("reduction in the infinite dihedral group only cancels") {
  auto m = oracle::path({kInfinity});
  CHECK(reduce_word(m, {0, 1, 0, 1, 0}).value() == Word{0, 1, 0, 1, 0});
  CHECK(reduce_word(m, {0, 1, 1, 0}).value().empty());
}

TEST_CASE("braid moves find the long element of A2") {
  auto m = oracle::path({3});
  auto r = reduce_word(m, {0, 1, 0, 1});
  REQUIRE(r);
  CHECK(r->size() == 2);
  CHECK(reduce_word(m, {0, 1, 0}).value().size() == 3);
  CHECK(reduce_word(m, {1, 0, 1}) == reduce_word(m, {0, 1, 0}));
}

TEST_CASE("S3 deletion pair for s t s t is the first valid one") {
  auto m = oracle::path({3});
  Word w{0, 1, 0, 1};
  auto model = coxeter_perm_model(m);
  REQUIRE(model);
  const auto& g = model->generators();
  std::optional<std::pair<std::size_t, std::size_t>> first;
  for (std::size_t i = 0; i < w.size() && !first; ++i)
    for (std::size_t j = i + 1; j < w.size() && !first; ++j) {
      Word v;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != i && k != j) v.push_back(w[k]);
      if (oracle::evaluate(g, model->degree(), v) == oracle::evaluate(g, model->degree(), w)) first = {i, j};
    }
  REQUIRE(first);
  CHECK(deletion_witness(m, w) == first);
  CHECK_FALSE(deletion_witness(m, {0, 1, 0}).has_value());
}

TEST_CASE("deletion condition holds for every non-reduced word over small spherical systems") {
  for (const auto& sys : oracle::spherical_systems(24)) {
    const auto& m = sys.matrix;
    CAPTURE(m.to_text());
    auto model = coxeter_perm_model(m);
    REQUIRE(model);
    auto dist = oracle::geodesic_lengths(model->generators(), model->degree());
    WordOracle wo(m);
    for (std::size_t len = 2; len <= 5; ++len)
      oracle::for_each_word(m.rank(), len, [&](const Word& w) {
        auto p = oracle::evaluate(model->generators(), model->degree(), w);
        auto witness = wo.deletion_witness(w);
        CHECK(witness.has_value() == (dist.at(p) < w.size()));
        if (witness) {
          Word v;
          for (std::size_t k = 0; k < w.size(); ++k)
            if (k != witness->first && k != witness->second) v.push_back(w[k]);
          CHECK(oracle::evaluate(model->generators(), model->degree(), v) == p);
        }
      });
  }
}

TEST_CASE("reduction never lengthens and preserves the element") {
  std::mt19937_64 rng(17);
  const char* systems[] = {"rank 3; m 1 3 = 3; m 2 3 = inf", "rank 3; m 1 2 = 3; m 2 3 = 3; m 1 3 = 3",
                           "rank 4; m 1 2 = 4; m 2 3 = inf; m 3 4 = 5", "rank 3; m 1 2 = 4; m 1 3 = 4"};
  for (const char* text : systems) {
    auto m = parse_system(text);
    for (int i = 0; i < 40; ++i) {
      auto w = random_word(rng, m.rank(), 1 + i % 9);
      auto r = reduce_word(m, w);
      REQUIRE(r);
      CHECK(r->size() <= w.size());
      CHECK(words_equal(m, w, *r) == std::optional<bool>(true));
      CHECK(reduce_word(m, *r) == r);
    }
  }
}

TEST_CASE("exhausted budgets are reported, never treated as reduced") {
  auto m = oracle::triangle(3, 3, 3);
  Word w{0, 1, 0, 2, 1, 2, 0, 1, 0};
  CHECK_FALSE(reduce_word(m, w, 3).has_value());
  CHECK_FALSE(words_equal(m, w, w, 3).has_value());
  CHECK_THROWS_AS(deletion_witness(m, w, 3), BudgetExhausted);
}

TEST_CASE("letter-deleting retraction is an idempotent homomorphism on even systems") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = oracle::random_even_system(rng, 2 + trial % 4);
    auto keep = GenSubset(rng() & m.all().bits());
    CAPTURE(m.to_text());
    for (int i = 0; i < 5; ++i) {
      auto u = random_word(rng, m.rank(), 4), v = random_word(rng, m.rank(), 4);
      auto lhs = even_retraction(m, keep, concat(u, v));
      auto rhs = concat(even_retraction(m, keep, u), even_retraction(m, keep, v));
      CHECK(words_equal(m, lhs, rhs) == std::optional<bool>(true));
      CHECK(even_retraction(m, keep, lhs) == lhs);
    }
    // (st)^m goes to the identity when exactly one of s, t is kept.
    for (std::size_t s = 0; s < m.rank(); ++s)
      for (std::size_t t = s + 1; t < m.rank(); ++t) {
        if (is_infinite(m(s, t)) || keep.contains(s) == keep.contains(t)) continue;
        Word rel;
        for (Label k = 0; k < m(s, t); ++k) rel.insert(rel.end(), {s, t});
        CHECK(words_equal(m, even_retraction(m, keep, rel), {}) == std::optional<bool>(true));
      }
    std::vector<Word> samples;
    for (int i = 0; i < 10; ++i) samples.push_back(random_word(rng, m.rank(), 6));
    CHECK(retraction_commutes(m, keep, GenSubset(rng() & m.all().bits()), samples));
  }
  CHECK_THROWS_AS(even_retraction(oracle::path({3}), GenSubset::of({0}), {0, 1}), NotEven);
}
