#pragma once

// Finite permutation groups by explicit closure.
//
// Groups are materialised lazily and at most once; copies of a FinGroup
// share the cached element list. Large groups that split as direct products
// over disjoint point blocks are handled factor by factor wherever the
// operation allows it, so the product itself never has to be enumerated.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coxrig/permutation.hpp"

namespace coxrig {

inline constexpr std::size_t kDefaultOrderBound = 1'000'000;

class FinGroup {
 public:
  FinGroup() : FinGroup({}, 0) {}
  FinGroup(std::vector<Permutation> generators, std::size_t degree, std::size_t bound = kDefaultOrderBound);

  static FinGroup trivial(std::size_t degree) { return FinGroup({}, degree); }

  const std::vector<Permutation>& generators() const { return generators_; }
  std::size_t degree() const { return degree_; }
  std::size_t bound() const { return bound_; }
  Permutation identity() const { return Permutation(degree_); }

  /// Identity first, then breadth-first by word length. Throws
  /// OrderBoundExceeded when the group has more than bound() elements.
  const std::vector<Permutation>& elements() const;
  std::size_t order() const { return elements().size(); }
  bool contains(const Permutation& p) const;
  std::optional<std::size_t> index_of(const Permutation& p) const;
  /// Generator indices w with elements()[i] = g[w0] * g[w1] * ...
  std::vector<std::size_t> word_of(std::size_t element_index) const;
  bool materialized() const;

  /// Elements sorted by image vector; canonical for comparing subgroups.
  std::vector<Permutation> sorted_elements() const;
  bool same_subgroup(const FinGroup& other) const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Permutation> elements;
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
    std::vector<std::pair<std::size_t, std::size_t>> parent;  // (parent index, generator)
    bool done = false;
  };
  void materialize() const;

  std::vector<Permutation> generators_;
  std::size_t degree_ = 0;
  std::size_t bound_ = kDefaultOrderBound;
  std::shared_ptr<Cache> cache_;
};

/// Full element list (same as G.elements()).
const std::vector<Permutation>& closure(const FinGroup& g);

/// A generating set for the subgroup whose elements are `elements`, chosen
/// greedily in the given order.
FinGroup subgroup_from_elements(const std::vector<Permutation>& elements, std::size_t degree,
                                std::size_t bound = kDefaultOrderBound);

bool is_subgroup(const FinGroup& h, const FinGroup& g);
bool is_normal(const FinGroup& h, const FinGroup& g);

/// N_G(H). When H is the product of its projections onto the direct factors
/// of G, the normaliser is computed factor by factor.
FinGroup normalizer(const FinGroup& g, const FinGroup& h);
FinGroup centralizer(const FinGroup& g, const FinGroup& h);
FinGroup center(const FinGroup& g);

FinGroup normal_closure(const FinGroup& g, const Permutation& x);
/// [A, B] inside the group generated by A and B.
FinGroup commutator_subgroup(const FinGroup& a, const FinGroup& b);
/// x <> y = [gp(x), gp(y)].
FinGroup diamond(const FinGroup& g, const Permutation& x, const Permutation& y);
bool orthogonal(const FinGroup& g, const Permutation& x, const Permutation& y);

struct DomainReport {
  bool is_domain = true;
  std::optional<std::pair<Permutation, Permutation>> zero_divisor_witness;
  /// {g : g <> g = 1}
  std::vector<Permutation> self_orthogonal;
  /// Comp(x, z) = for all y (y <> z = 1 implies x <> y = 1), per requested pair.
  std::vector<std::pair<std::pair<Permutation, Permutation>, bool>> comp;
};

DomainReport domain_report(const FinGroup& g,
                           const std::vector<std::pair<Permutation, Permutation>>& comp_pairs = {});

/// The permutation of marked indices induced by conjugation, one per
/// distinct image, sorted. Throws NotInvariant if some element moves a
/// marked element outside the list.
std::vector<Permutation> perm_action_on_marked_set(const std::vector<Permutation>& elements,
                                                   const std::vector<Permutation>& marked);

// ---- direct-product structure ------------------------------------------

struct BlockDecomposition {
  /// Point membership per block; blocks are the connected components of
  /// generator supports, ordered by smallest point. Fixed points of the
  /// whole group are not in any block.
  std::vector<std::vector<std::size_t>> points;
  std::vector<std::vector<std::size_t>> generator_indices;
  std::vector<FinGroup> factors;
};

BlockDecomposition decompose_blocks(const FinGroup& g);
/// p on `points`, identity elsewhere. `points` must be p-invariant.
Permutation restrict_to(const Permutation& p, const std::vector<std::size_t>& points);

/// Lexicographically least representative of each left coset gH, sorted,
/// identity first.
std::vector<Permutation> left_transversal(const FinGroup& g, const FinGroup& h);
Permutation coset_representative(const FinGroup& g, const FinGroup& h, const Permutation& x);

struct ConjugateForm {
  FinGroup subgroup;       ///< c^-1 H c
  Permutation conjugator;  ///< c
};
/// A G-conjugate of H chosen canonically (least sorted element list per factor).
ConjugateForm canonical_conjugate(const FinGroup& g, const FinGroup& h);

/// Representatives of N_G(H) \ {t in G : t^-1 H t <= F} / F.
std::vector<Permutation> transporter_double_cosets(const FinGroup& g, const FinGroup& h, const FinGroup& f);

// ---- automorphisms -------------------------------------------------------

inline constexpr std::size_t kAutomorphismOrderBound = 256;

struct AutomorphismGroup {
  /// Elements of G in the order used for the permutation action below.
  std::vector<Permutation> elements;
  /// The generating tuple whose images determine an automorphism.
  std::vector<std::size_t> basis;
  /// Generators of Aut(G) as permutations of element indices.
  std::vector<Permutation> generators;
  /// |Aut(G)|, from the orbit-stabiliser tower of the search.
  std::uint64_t order = 1;
  FinGroup inner;
  bool out_trivial = true;
};

/// Throws OrderBoundExceeded when |G| > bound.
AutomorphismGroup automorphism_group(const FinGroup& g, std::size_t bound = kAutomorphismOrderBound);

/// An automorphism outside Inn(G), as images of the elements of G, or
/// nullopt if Out(G) is trivial. Stops at the first outer one.
std::optional<std::vector<Permutation>> has_outer_automorphism(const FinGroup& g,
                                                               std::size_t bound = kAutomorphismOrderBound);

/// Automorphism of G by conjugation with x (which must normalise G), as a
/// permutation of G's element indices.
Permutation conjugation_action(const FinGroup& g, const Permutation& x);

// ---- 2x2 matrices modulo a prime ----------------------------------------

struct Mat2ModP {
  std::uint64_t p = 2;
  std::uint64_t a = 1, b = 0, c = 0, d = 1;

  static Mat2ModP identity(std::uint64_t p) { return {p, 1, 0, 0, 1}; }
  Mat2ModP operator*(const Mat2ModP& o) const;
  Mat2ModP pow(std::int64_t k) const;  ///< negative k needs an invertible matrix
  Mat2ModP inverse() const;            ///< throws NotInvertible
  std::uint64_t det() const;
  /// Multiplicative order in GL2(p); throws NotInvertible.
  std::uint64_t order() const;
  bool operator==(const Mat2ModP& o) const = default;
  std::string to_string() const;
};

struct MatrixClaim {
  std::string label;
  std::string lhs;  ///< product like "M0 M1^3 M0^-1"; "I" is the identity
  std::string rhs;
  bool expect_equal = true;
};

/// Evaluates each claim over the named matrices; true where the claim holds.
std::vector<bool> matrix_mod_p_check(std::uint64_t p, const std::map<std::string, Mat2ModP>& named,
                                     const std::vector<MatrixClaim>& claims);
Mat2ModP evaluate_matrix_product(std::uint64_t p, const std::map<std::string, Mat2ModP>& named,
                                 const std::string& expr);

std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t p);

}  // namespace coxrig
