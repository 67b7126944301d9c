#include "coxrig/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "coxrig/classification.hpp"
#include "coxrig/errors.hpp"
#include "coxrig/perm_model.hpp"

namespace coxrig {

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : w) {
      h ^= x + 1;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

// Every word obtained from x by one braid move.
template <typename F>
void for_each_braid_move(const CoxeterMatrix& m, const Word& x, F&& emit) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    auto s = x[i], t = x[i + 1];
    if (s == t) continue;
    auto l = m(s, t);
    if (is_infinite(l) || i + l > x.size()) continue;
    bool alternating = true;
    for (std::size_t k = 2; k < l && alternating; ++k) alternating = x[i + k] == (k % 2 == 0 ? s : t);
    if (!alternating) continue;
    Word y = x;
    for (std::size_t k = 0; k < l; ++k) y[i + k] = (k % 2 == 0 ? t : s);
    emit(std::move(y));
  }
}

}  // namespace

Word parse_word(std::string_view text, std::size_t rank) {
  Word out;
  std::size_t pos = 0;
  auto is_sep = [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; };
  while (pos < text.size()) {
    while (pos < text.size() && is_sep(text[pos])) ++pos;
    if (pos == text.size()) break;
    auto end = pos;
    while (end < text.size() && !is_sep(text[end])) ++end;
    auto tok = text.substr(pos, end - pos);
    pos = end;
    if (tok == "e") continue;
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError("bad letter in word: " + std::string(tok));
    if (v == 0 || v > rank)
      throw IndexOutOfRange("letter " + std::string(tok) + " outside 1.." + std::to_string(rank));
    out.push_back(v - 1);
  }
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

WordOracle::WordOracle(CoxeterMatrix m, std::size_t budget) : matrix_(std::move(m)), budget_(budget) {
  if (matrix_.rank() > 0 && is_spherical(matrix_, matrix_.all())) model_ = coxeter_perm_model(matrix_);
}

void WordOracle::check(const Word& w) const {
  for (auto x : w)
    if (x >= matrix_.rank()) throw IndexOutOfRange("letter outside the generating set");
}

std::optional<Word> WordOracle::reduce(const Word& w) const {
  check(w);
  Word current = w;
  std::size_t visited = 0;
  while (true) {
    std::unordered_set<Word, WordHash> seen{current};
    std::vector<Word> queue{current};
    bool cancelled = false;
    for (std::size_t h = 0; h < queue.size() && !cancelled; ++h) {
      if (++visited > budget_) return std::nullopt;
      const Word x = queue[h];
      for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (x[i] == x[i + 1]) {
          current.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
          current.insert(current.end(), x.begin() + static_cast<std::ptrdiff_t>(i) + 2, x.end());
          cancelled = true;
          break;
        }
      if (cancelled) break;
      for_each_braid_move(matrix_, x, [&](Word y) {
        if (seen.insert(y).second) queue.push_back(std::move(y));
      });
    }
    if (!cancelled) return *std::min_element(queue.begin(), queue.end());
  }
}

std::optional<Permutation> WordOracle::evaluate(const Word& w) const {
  check(w);
  if (!model_) return std::nullopt;
  auto p = model_->identity();
  for (auto s : w) p = p * model_->generators()[s];
  return p;
}

std::optional<bool> WordOracle::equal(const Word& u, const Word& v) const {
  if (model_) return *evaluate(u) == *evaluate(v);
  auto ru = reduce(u);
  if (!ru) return std::nullopt;
  auto rv = reduce(v);
  if (!rv) return std::nullopt;
  return *ru == *rv;
}

std::optional<std::pair<std::size_t, std::size_t>> WordOracle::deletion_witness(const Word& w) const {
  check(w);
  std::size_t length = 0;
  if (model_ && *spherical_order(matrix_, matrix_.all()) <= model_->bound()) {
    length = model_->word_of(*model_->index_of(*evaluate(w))).size();
  } else {
    auto r = reduce(w);
    if (!r) throw BudgetExhausted("word budget exhausted while reducing " + word_to_string(w));
    length = r->size();
  }
  if (length == w.size()) return std::nullopt;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      Word shorter;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != i && k != j) shorter.push_back(w[k]);
      auto eq = equal(shorter, w);
      if (!eq) throw BudgetExhausted("word budget exhausted while testing deletions");
      if (*eq) return std::make_pair(i, j);
    }
  throw std::logic_error("non-reduced word without a deletion pair");
}

std::optional<Word> reduce_word(const CoxeterMatrix& m, const Word& w, std::size_t budget) {
  return WordOracle(m, budget).reduce(w);
}

std::optional<std::pair<std::size_t, std::size_t>> deletion_witness(const CoxeterMatrix& m, const Word& w,
                                                                    std::size_t budget) {
  return WordOracle(m, budget).deletion_witness(w);
}

std::optional<bool> words_equal(const CoxeterMatrix& m, const Word& u, const Word& v, std::size_t budget) {
  return WordOracle(m, budget).equal(u, v);
}

Word even_retraction(const CoxeterMatrix& m, GenSubset keep, const Word& w) {
  if (!is_even(m)) throw NotEven("letter-deleting retractions need an even system");
  if (!keep.is_subset_of(m.all())) throw IndexOutOfRange("retraction subset exceeds rank");
  Word out;
  for (auto x : w) {
    if (x >= m.rank()) throw IndexOutOfRange("letter outside the generating set");
    if (keep.contains(x)) out.push_back(x);
  }
  return out;
}

bool retraction_commutes(const CoxeterMatrix& m, GenSubset i, GenSubset j, const std::vector<Word>& samples) {
  for (const auto& w : samples)
    if (even_retraction(m, i, even_retraction(m, j, w)) != even_retraction(m, j, even_retraction(m, i, w)))
      return false;
  return true;
}

}  // namespace coxrig
