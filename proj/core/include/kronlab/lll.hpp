#pragma once

#include <gmpxx.h>

#include <vector>

#include "kronlab/rational.hpp"

namespace kronlab {

using IntVector = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVector>;  // rows are lattice vectors

struct LllResult {
  IntMatrix basis;      // delta-LLL-reduced, same lattice as the input
  IntMatrix transform;  // unimodular: basis[i] = sum_j transform[i][j] * input[j]
};

/// Exact-arithmetic LLL reduction (rational Gram-Schmidt data throughout).
/// Requires linearly independent rows and 1/4 < delta < 1; throws otherwise.
LllResult lll_reduce_with_transform(const IntMatrix& basis, const Rational& delta = Rational(99, 100));

IntMatrix lll_reduce(const IntMatrix& basis, const Rational& delta = Rational(99, 100));

/// Gram determinant det(B B^T), an invariant of the lattice basis.
mpz_class gram_determinant(const IntMatrix& basis);

}  // namespace kronlab
