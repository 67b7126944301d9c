#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace coxrig {

/// A bijection of {0,..,d-1}. Products compose as functions, right to left:
/// (a * b)(p) = a(b(p)), so conjugation a * s * a.inverse() moves the support
/// of s by a.
class Permutation {
 public:
  using Point = std::uint16_t;

  Permutation() = default;
  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);
  /// Throws std::invalid_argument if `images` is not a bijection.
  explicit Permutation(std::vector<Point> images);

  /// Parses cycle notation with 1-based points, e.g. "(1 2)(3 4 5)" or "()".
  static Permutation parse_cycles(std::string_view text, std::size_t degree);
  /// Largest point mentioned in a cycle string (1-based), 0 for "()".
  static std::size_t max_point(std::string_view text);

  static Permutation transposition(std::size_t degree, std::size_t a, std::size_t b);

  std::size_t degree() const { return images_.size(); }
  Point operator()(std::size_t p) const { return images_[p]; }
  const std::vector<Point>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  /// this * x * this^{-1}
  Permutation conjugate(const Permutation& x) const;
  bool is_identity() const;
  std::size_t order() const;
  /// Same permutation on a larger point set.
  Permutation extended(std::size_t degree) const;

  /// 1-based cycle notation; "()" for the identity.
  std::string to_cycles() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace coxrig
