#pragma once

// Words in the generators, reduced by braid moves and cancellation.
//
// A word is reduced iff no word in its braid class contains two equal
// adjacent letters, and two reduced words represent the same element iff
// they are braid-equivalent. reduce_word explores braid classes breadth
// first, cancels as soon as a square appears, and returns the least word of
// the final class, which is therefore a normal form.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxrig/coxeter.hpp"
#include "coxrig/fingroup.hpp"

namespace coxrig {

using Word = std::vector<std::size_t>;

inline constexpr std::size_t kDefaultWordBudget = 100'000;

/// Space- or comma-separated 1-based indices; "" and "e" are the identity.
Word parse_word(std::string_view text, std::size_t rank);
/// 1-based, space separated; "e" for the empty word.
std::string word_to_string(const Word& w);

class WordOracle {
 public:
  explicit WordOracle(CoxeterMatrix m, std::size_t budget = kDefaultWordBudget);

  const CoxeterMatrix& matrix() const { return matrix_; }
  std::size_t budget() const { return budget_; }
  bool has_finite_model() const { return model_.has_value(); }

  /// Normal form, or nullopt when the budget of visited words runs out.
  std::optional<Word> reduce(const Word& w) const;
  /// nullopt when the budget runs out.
  std::optional<bool> equal(const Word& u, const Word& v) const;
  /// First (i, j), i < j, 0-based, whose deletion keeps the element; nullopt
  /// iff w is reduced. Throws BudgetExhausted.
  std::optional<std::pair<std::size_t, std::size_t>> deletion_witness(const Word& w) const;
  /// Image in the permutation model when the whole system is spherical.
  std::optional<Permutation> evaluate(const Word& w) const;

 private:
  void check(const Word& w) const;

  CoxeterMatrix matrix_;
  std::size_t budget_;
  std::optional<FinGroup> model_;
};

std::optional<Word> reduce_word(const CoxeterMatrix& m, const Word& w, std::size_t budget = kDefaultWordBudget);
std::optional<std::pair<std::size_t, std::size_t>> deletion_witness(const CoxeterMatrix& m, const Word& w,
                                                                    std::size_t budget = kDefaultWordBudget);
std::optional<bool> words_equal(const CoxeterMatrix& m, const Word& u, const Word& v,
                                std::size_t budget = kDefaultWordBudget);

/// Keeps the letters in `keep`. Throws NotEven unless the system is even.
Word even_retraction(const CoxeterMatrix& m, GenSubset keep, const Word& w);
bool retraction_commutes(const CoxeterMatrix& m, GenSubset i, GenSubset j, const std::vector<Word>& samples);

}  // namespace coxrig
