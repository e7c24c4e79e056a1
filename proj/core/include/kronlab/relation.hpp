#pragma once

#include <optional>
#include <vector>

#include "kronlab/bigfloat.hpp"
#include "kronlab/lll.hpp"

namespace kronlab {

/// A nonzero integer vector k with |sum_i k_i x_i| recorded as the residual
/// under the inputs it was found for.
struct IntegerRelation {
  std::vector<mpz_class> coefficients;
  BigFloat residual;
};

/// Searches the scaled lattice embedding (scaling 2^precision_bits, LLL with
/// delta = 99/100) for an integer relation among xs with |k_i| <= max_coeff
/// and residual below 2^{-precision_bits/2} * max|x_i|.
///
/// nullopt means none was detected within those bounds; it is not a proof of
/// independence. Throws if any input carries fewer than precision_bits bits.
std::optional<IntegerRelation> find_integer_relation(const std::vector<BigFloat>& xs,
                                                     const mpz_class& max_coeff,
                                                     int precision_bits = kDefaultPrecisionBits);

/// |sum_i k_i x_i| evaluated at the given working precision.
BigFloat relation_residual(const std::vector<mpz_class>& k, const std::vector<BigFloat>& xs,
                           int precision_bits);

}  // namespace kronlab
