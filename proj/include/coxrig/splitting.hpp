#pragma once

// Stallings splittings of Coxeter groups over finite special subgroups,
// found by repeatedly cutting along spherical separators of the graph with
// an edge wherever m(s,t) is finite.

#include <optional>
#include <string>
#include <vector>

#include "coxrig/classification.hpp"
#include "coxrig/coxeter.hpp"

namespace coxrig {

struct Separator {
  GenSubset s0, s1, s2;
  bool operator==(const Separator&) const = default;
};

inline constexpr std::size_t kDefaultSeparatorCap = 10'000;

/// Every (S0, S1, S2) with S0 spherical, S0 disconnecting the graph on
/// S \ S0, S1 containing the component with the smallest generator and
/// S1 u S2 = S, S1 n S2 = S0. Ordered by S0 (size, then lexicographic), then
/// by S1. At most `cap` triples. Throws SphericalInput when W is finite.
std::vector<Separator> spherical_separators(const CoxeterMatrix& m, std::size_t cap = kDefaultSeparatorCap);

struct SplitNode {
  GenSubset generators;
  bool finite = false;
  /// "asserted-by-search" on infinite leaves: no separator exists, which is
  /// taken to mean one end.
  std::optional<std::string> one_ended;
};

struct SplitEdge {
  std::size_t from = 0, to = 0;
  GenSubset generators;
};

struct SplitTree {
  CoxeterMatrix matrix;
  std::vector<SplitNode> nodes;
  std::vector<SplitEdge> edges;

  /// First violated invariant (tree, spherical edge labels equal to the
  /// endpoint intersection, reduced, labels cover S), or nullopt.
  std::optional<std::string> invariant_violation() const;
  /// Throws InvalidTree.
  void validate() const;
  std::vector<std::size_t> incident_edges(std::size_t node) const;
};

SplitTree stallings_splitting(const CoxeterMatrix& m);

/// is_even(M) == every vertex group is even; expected always true.
bool even_vertex_check(const CoxeterMatrix& m, const SplitTree& t);

struct VCType {
  enum class Kind { kCyclic, kDihedral, kNotVirtuallyCyclic };
  Kind kind = Kind::kNotVirtuallyCyclic;
  /// (A, C, B) for the dihedral type.
  std::optional<GenSubset> a, c, b;
};
std::string to_string(VCType::Kind k);

VCType vc_type(const CoxeterMatrix& m);

}  // namespace coxrig
