#include "coxrig/permutation.hpp"

#include <cctype>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "coxrig/errors.hpp"

namespace coxrig {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw std::invalid_argument("images do not form a permutation");
    seen[v] = true;
  }
}

namespace {

std::vector<std::vector<std::size_t>> parse_cycle_list(std::string_view text) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw ParseError("empty permutation (use \"()\" for the identity)");
  while (pos < text.size()) {
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
    ++pos;
    std::vector<std::size_t> cycle;
    while (true) {
      while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
      if (pos >= text.size()) throw ParseError("unterminated cycle: " + std::string(text));
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      std::size_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
      if (ec != std::errc() || v == 0) throw ParseError("bad point in cycle notation: " + std::string(text));
      pos = static_cast<std::size_t>(ptr - text.data());
      cycle.push_back(v);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

}  // namespace

std::size_t Permutation::max_point(std::string_view text) {
  std::size_t best = 0;
  for (const auto& c : parse_cycle_list(text))
    for (auto v : c) best = std::max(best, v);
  return best;
}

Permutation Permutation::parse_cycles(std::string_view text, std::size_t degree) {
  Permutation out(degree);
  // Cycles are composed right to left, matching operator*.
  auto cycles = parse_cycle_list(text);
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto& c = *it;
    std::vector<bool> seen(degree + 1, false);
    for (auto v : c) {
      if (v > degree) throw ParseError("point " + std::to_string(v) + " exceeds degree " + std::to_string(degree));
      if (seen[v]) throw ParseError("repeated point in cycle: " + std::string(text));
      seen[v] = true;
    }
    if (c.size() < 2) continue;
    Permutation cyc(degree);
    for (std::size_t k = 0; k < c.size(); ++k)
      cyc.images_[c[k] - 1] = static_cast<Point>(c[(k + 1) % c.size()] - 1);
    out = cyc * out;
  }
  return out;
}

Permutation Permutation::transposition(std::size_t degree, std::size_t a, std::size_t b) {
  Permutation t(degree);
  std::swap(t.images_[a], t.images_[b]);
  return t;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.degree() != degree()) throw std::invalid_argument("degree mismatch in permutation product");
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t p = 0; p < images_.size(); ++p) out.images_[p] = images_[rhs.images_[p]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t p = 0; p < images_.size(); ++p) out.images_[images_[p]] = static_cast<Point>(p);
  return out;
}

Permutation Permutation::conjugate(const Permutation& x) const {
  // (g x g^-1)(g(p)) = g(x(p))
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t p = 0; p < images_.size(); ++p) out.images_[images_[p]] = images_[x.images_[p]];
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t p = 0; p < images_.size(); ++p)
    if (images_[p] != p) return false;
  return true;
}

std::size_t Permutation::order() const {
  std::size_t result = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t p = 0; p < images_.size(); ++p) {
    if (seen[p]) continue;
    std::size_t len = 0;
    for (std::size_t q = p; !seen[q]; q = images_[q]) {
      seen[q] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Permutation Permutation::extended(std::size_t degree) const {
  if (degree < images_.size()) throw std::invalid_argument("cannot shrink a permutation");
  Permutation out(degree);
  std::copy(images_.begin(), images_.end(), out.images_.begin());
  return out;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t p = 0; p < images_.size(); ++p) {
    if (seen[p] || images_[p] == p) continue;
    out += "(";
    bool first = true;
    for (std::size_t q = p; !seen[q]; q = images_[q]) {
      seen[q] = true;
      if (!first) out += " ";
      out += std::to_string(q + 1);
      first = false;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace coxrig
