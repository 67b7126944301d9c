#pragma once

// Spherical and affine type recognition, finite orders, Moussong's
// hyperbolicity criterion and the geometric-representation enumerator.

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxrig/coxeter.hpp"
#include "coxrig/permutation.hpp"

namespace coxrig {

using Order = boost::multiprecision::cpp_int;

/// Irreducible finite Coxeter types. Rank-2 systems with m = 3 and m = 4 are
/// reported as A2 and B2; every other finite dihedral label is I2(m).
struct FiniteType {
  enum class Family : char { kA, kB, kD, kE, kF, kH, kI };

  Family family = Family::kA;
  unsigned rank = 1;
  unsigned m = 0;  ///< only for I2(m)

  std::string name() const;
  bool operator==(const FiniteType&) const = default;

  static FiniteType A(unsigned n) { return {Family::kA, n, 0}; }
  static FiniteType B(unsigned n) { return {Family::kB, n, 0}; }
  static FiniteType D(unsigned n) { return {Family::kD, n, 0}; }
  static FiniteType E(unsigned n) { return {Family::kE, n, 0}; }
  static FiniteType F4() { return {Family::kF, 4, 0}; }
  static FiniteType H(unsigned n) { return {Family::kH, n, 0}; }
  static FiniteType I2(unsigned m) { return {Family::kI, 2, m}; }
};

/// Irreducible affine types; `n` is the index in ~X_n, the rank is n + 1.
struct AffineType {
  enum class Family : char { kA, kB, kC, kD, kE, kF, kG };

  Family family = Family::kA;
  unsigned n = 1;

  unsigned rank() const { return n + 1; }
  std::string name() const;
  bool operator==(const AffineType&) const = default;
};

enum class ComponentKind { kSpherical, kAffine, kNonElementaryHyperbolic, kOtherInfinite };
std::string to_string(ComponentKind k);

struct ComponentClass {
  ComponentKind kind = ComponentKind::kOtherInfinite;
  std::optional<FiniteType> finite;
  std::optional<AffineType> affine;
  std::optional<Order> order;
};

struct ClassifiedComponent {
  GenSubset generators;
  ComponentClass cls;
};

struct Classification {
  std::vector<ClassifiedComponent> components;
  /// Every irreducible component is finite, affine or non-elementary hyperbolic.
  bool theorem1_hypothesis = true;
};

/// Template matrices with the standard node numbering (paths in order,
/// branch nodes last).
CoxeterMatrix finite_template(const FiniteType& t);
CoxeterMatrix affine_template(const AffineType& t);

/// Labelled-graph isomorphism: returns `map` with b(map[i], map[j]) == a(i, j).
std::optional<std::vector<std::size_t>> find_isomorphism(const CoxeterMatrix& a, const CoxeterMatrix& b);

/// Throws NotIrreducible if the diagram is disconnected.
std::optional<FiniteType> spherical_type(const CoxeterMatrix& m);
std::optional<AffineType> affine_type(const CoxeterMatrix& m);

Order finite_order(const FiniteType& t);
/// Orders up to this size are cross-checked against enumerate_elements in
/// the test suite; larger table entries are reported as unverified.
inline constexpr unsigned kDeskVerifiedOrder = 200;
bool order_verified_at_desk_scale(const FiniteType& t);

/// |W_T| if W_T is finite.
std::optional<Order> spherical_order(const CoxeterMatrix& m, GenSubset t);
bool is_spherical(const CoxeterMatrix& m, GenSubset t);

/// Memoised sphericity queries over one matrix.
class SphericityOracle {
 public:
  explicit SphericityOracle(CoxeterMatrix m) : matrix_(std::move(m)) {}
  const CoxeterMatrix& matrix() const { return matrix_; }
  std::optional<Order> order(GenSubset t);
  bool spherical(GenSubset t) { return order(t).has_value(); }

 private:
  CoxeterMatrix matrix_;
  std::unordered_map<std::uint64_t, std::optional<Order>> cache_;
};

/// Visits every spherical subset of `within` (including the empty set) in
/// depth-first order.
void for_each_spherical_subset(SphericityOracle& oracle, GenSubset within,
                               const std::function<void(GenSubset)>& visit);

/// Subsets U of `within` with W_U infinite and W_V finite for every proper V.
std::vector<GenSubset> minimal_nonspherical_subsets(SphericityOracle& oracle, GenSubset within);

struct MoussongResult {
  bool hyperbolic = true;
  /// Irreducible affine subsystem of rank >= 3.
  std::optional<GenSubset> affine_witness;
  /// Disjoint, commuting, both infinite.
  std::optional<std::pair<GenSubset, GenSubset>> commuting_witness;
};

MoussongResult moussong_hyperbolic(const CoxeterMatrix& m);

Classification classify_components(const CoxeterMatrix& m);

/// Element of the geometric representation, row-major rank x rank.
struct GeometricMatrix {
  std::size_t rank = 0;
  std::vector<double> entries;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * rank + j]; }
  GeometricMatrix operator*(const GeometricMatrix& rhs) const;
  static GeometricMatrix identity(std::size_t rank);
};

/// Bilinear form entries -cos(pi / m(s,t)), with -1 for m = infinity.
std::vector<double> cosine_form(const CoxeterMatrix& m);
/// sigma_s : v -> v - 2 B(v, alpha_s) alpha_s in the basis of simple roots.
GeometricMatrix reflection_matrix(const CoxeterMatrix& m, std::size_t s);

/// Decimal places used when hashing geometric-representation entries.
inline constexpr int kGeometricDecimals = 9;

/// All elements of W when |W| <= bound, by breadth-first closure over the
/// reflections; nullopt once the bound is exceeded. When `oracle` supplies a
/// permutation image per generator, a rounding collision between elements
/// the permutations distinguish raises ToleranceCollision.
std::optional<std::vector<GeometricMatrix>> enumerate_elements(
    const CoxeterMatrix& m, std::size_t bound, const std::vector<Permutation>* oracle = nullptr);

struct FiniteSpecialSummary {
  Order max_order;
  std::vector<GenSubset> maximal_sphericals;
};

FiniteSpecialSummary max_finite_special_order(const CoxeterMatrix& m);

}  // namespace coxrig
