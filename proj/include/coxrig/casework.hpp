#pragma once

// Scripted checks of the amalgam counterexample A *_C B versus A *_C' B and
// of the dihedral matrix example over Z/11.

#include <string>
#include <vector>

#include "coxrig/coxeter.hpp"
#include "coxrig/fingroup.hpp"

namespace coxrig {

struct ChecklistItem {
  std::string id;
  std::string anchor;  ///< the claim being checked, quoted
  bool passed = false;
  /// Reported but not counted towards all_passed().
  bool informational = false;
  std::string detail;
};

struct Checklist {
  std::string name;
  std::vector<ChecklistItem> items;

  bool all_passed() const;
};

/// A on 3+7+4 points with generators in diagram order
///   a1, *, | a2, x, a3, *, a4, * | a5, *, *
/// and B on 7+4 points with generators
///   b1, *, b2, *, b4, * | b3, *, b5
/// Each block is a path of adjacent transpositions. Points and the indices
/// below are 0-based.
struct CounterexampleData {
  FinGroup a, b, c;
  CoxeterMatrix a_matrix, b_matrix;
  /// Generator index of a_n, b_n, c_n (n = 1..5) in a, b, c.
  std::vector<std::size_t> a_marked, b_marked;
  std::size_t x = 3;
  /// c_n -> index n' of a_{n'} or b_{n'} (0-based).
  std::vector<std::size_t> i, j, k;
  /// Permutations of {1..5}, stored 0-based on 5 points.
  Permutation alpha, beta, kappa, alpha_prime, beta_prime;
};

const CounterexampleData& counterexample_data();

/// The rank-15 Coxeter system of A *_C B: generators 1..11 are those of A,
/// 12..15 the unmarked generators of B in order. With `twisted`, C is glued
/// through k instead of j.
CoxeterMatrix counterexample_system(bool twisted = false);

Checklist verify_counterexample();
Checklist verify_dihedral_example();

}  // namespace coxrig
