#pragma once

// Coxeter matrices, generator subsets and the two diagram conventions.
//
// Generators are 0-based everywhere in the C++ API. Every text boundary
// (parse_system, GenSubset::to_string, word parsing, the CLI) is 1-based.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace coxrig {

using Label = std::uint32_t;

/// Sentinel for m(s,t) = infinity. Zero is never a valid label.
inline constexpr Label kInfinity = std::numeric_limits<Label>::max();

/// Subsets are stored as 64-bit masks, which caps the rank.
inline constexpr std::size_t kMaxRank = 64;

constexpr bool is_infinite(Label m) { return m == kInfinity; }
std::string label_to_string(Label m);

class GenSubset {
 public:
  constexpr GenSubset() = default;
  constexpr explicit GenSubset(std::uint64_t bits) : bits_(bits) {}

  static GenSubset full(std::size_t rank);
  static GenSubset of(std::initializer_list<std::size_t> indices);
  static GenSubset from_indices(const std::vector<std::size_t>& indices);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr GenSubset with(std::size_t i) const { return GenSubset(bits_ | (std::uint64_t{1} << i)); }
  constexpr GenSubset without(std::size_t i) const { return GenSubset(bits_ & ~(std::uint64_t{1} << i)); }
  constexpr bool is_subset_of(GenSubset other) const { return (bits_ & ~other.bits_) == 0; }
  /// Smallest member; undefined on the empty set.
  constexpr std::size_t min_index() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }
  constexpr std::size_t max_index() const { return 63U - static_cast<std::size_t>(std::countl_zero(bits_)); }

  std::vector<std::size_t> indices() const;
  /// 1-based, e.g. "{1,3}".
  std::string to_string() const;

  constexpr GenSubset operator|(GenSubset o) const { return GenSubset(bits_ | o.bits_); }
  constexpr GenSubset operator&(GenSubset o) const { return GenSubset(bits_ & o.bits_); }
  constexpr GenSubset operator-(GenSubset o) const { return GenSubset(bits_ & ~o.bits_); }
  constexpr bool operator==(const GenSubset&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Ordering used for deterministic output: by size, then by sorted index list.
bool size_lex_less(GenSubset a, GenSubset b);
/// Plain lexicographic order on sorted index lists.
bool lex_less(GenSubset a, GenSubset b);

class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  /// Rank-n matrix with every off-diagonal entry 2.
  explicit CoxeterMatrix(std::size_t rank);

  /// Validates the diagonal, symmetry and label ranges; throws InvalidMatrix.
  static CoxeterMatrix from_rows(const std::vector<std::vector<Label>>& rows);

  std::size_t rank() const { return rank_; }
  Label operator()(std::size_t i, std::size_t j) const { return entries_[i * rank_ + j]; }

  /// Sets m(i,j) = m(j,i) = m for i != j. Rejects 0 and 1.
  void set(std::size_t i, std::size_t j, Label m);

  GenSubset all() const { return GenSubset::full(rank_); }

  /// Canonical text form, accepted by parse_system.
  std::string to_text() const;

  bool operator==(const CoxeterMatrix&) const = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Label> entries_;
};

/// A special subsystem together with the map back to the parent's indices.
struct InducedSystem {
  CoxeterMatrix matrix;
  std::vector<std::size_t> parent_index;

  GenSubset to_parent(GenSubset local) const;
  GenSubset to_local(GenSubset parent) const;
};

class DiagramGraph {
 public:
  enum class Convention {
    kFin,  ///< edge iff m < infinity (the separator graph)
    kCox,  ///< edge iff m != 2 (connectivity = irreducibility)
  };

  static DiagramGraph fin_graph(const CoxeterMatrix& m);
  static DiagramGraph cox_diagram(const CoxeterMatrix& m);

  Convention convention() const { return convention_; }
  std::size_t size() const { return adjacency_.size(); }
  GenSubset neighbours(std::size_t v) const { return adjacency_[v]; }

  /// Connected components of the subgraph induced on `within`, ordered by
  /// smallest member.
  std::vector<GenSubset> components(GenSubset within) const;

 private:
  DiagramGraph(Convention c, std::vector<GenSubset> adjacency)
      : convention_(c), adjacency_(std::move(adjacency)) {}

  Convention convention_;
  std::vector<GenSubset> adjacency_;
};

/// Grammar: "rank <n>; m <i> <j> = <k|inf>; ..." (unspecified entries are 2),
/// or "matrix [[1,4,4],[4,1,2],[4,2,1]]". Statements may be separated by ';'
/// or newlines; '#' starts a comment. Throws ParseError or InvalidMatrix.
CoxeterMatrix parse_system(std::string_view text);

std::vector<GenSubset> irreducible_components(const CoxeterMatrix& m);
std::vector<GenSubset> irreducible_components(const CoxeterMatrix& m, GenSubset within);

bool is_even(const CoxeterMatrix& m);
bool is_even(const CoxeterMatrix& m, GenSubset within);
bool is_two_spherical(const CoxeterMatrix& m);

/// Throws IndexOutOfRange if `t` mentions a generator >= rank.
InducedSystem induced_system(const CoxeterMatrix& m, GenSubset t);

}  // namespace coxrig
