#pragma once

#include <optional>

#include "coxrig/coxeter.hpp"
#include "coxrig/fingroup.hpp"

namespace coxrig {

/// Faithful permutation model of a spherical Coxeter system; generator i of
/// the result is the image of Coxeter generator i. Components occupy
/// consecutive point blocks in component order:
///   A(n)          adjacent transpositions on n+1 points
///   I2(m), m >= 4 the two reflections i -> -i, i -> 1-i of Z/m
///   B(n), D(n)    signed permutations on 2n points
///   H3, F4        the regular representation
/// Returns nullopt for E6, E7, E8 and H4. Throws UnsupportedType when a
/// component is infinite.
std::optional<FinGroup> coxeter_perm_model(const CoxeterMatrix& m, std::size_t bound = kDefaultOrderBound);

}  // namespace coxrig
