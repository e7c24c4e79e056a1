#include "kronlab/relation.hpp"

#include <algorithm>
#include <stdexcept>

namespace kronlab {

BigFloat relation_residual(const std::vector<mpz_class>& k, const std::vector<BigFloat>& xs,
                           int precision_bits) {
  BigFloat acc(precision_bits);
  for (size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    BigFloat term = xs[i].at_precision(precision_bits) * BigFloat::from_integer(k[i], precision_bits);
    acc = acc + term;
  }
  return acc.abs();
}

std::optional<IntegerRelation> find_integer_relation(const std::vector<BigFloat>& xs,
                                                     const mpz_class& max_coeff,
                                                     int precision_bits) {
  if (xs.empty()) throw std::invalid_argument("find_integer_relation: empty input");
  if (max_coeff < 1) throw std::invalid_argument("find_integer_relation: max_coeff must be >= 1");
  for (const auto& x : xs) {
    if (x.precision_bits() < precision_bits) {
      throw std::invalid_argument("find_integer_relation: insufficient precision");
    }
  }
  const size_t m = xs.size();
  const int work = precision_bits + 64;

  BigFloat maxabs(work);
  for (const auto& x : xs) {
    BigFloat a = x.abs();
    if (a > maxabs) maxabs = a.at_precision(work);
  }

  // Scaled embedding: rows (e_i | round(2^pb * x_i / max|x|)).
  IntMatrix basis(m, IntVector(m + 1, 0));
  for (size_t i = 0; i < m; ++i) {
    basis[i][i] = 1;
    if (!maxabs.is_zero()) {
      BigFloat scaled = xs[i].at_precision(work) / maxabs;
      mpfr_mul_2si(scaled.raw_mutable(), scaled.raw(), precision_bits, MPFR_RNDN);
      basis[i][m] = scaled.round_to_integer();
    }
  }

  LllResult red = lll_reduce_with_transform(basis, Rational(99, 100));

  // Acceptance threshold from the module contract.
  BigFloat threshold = maxabs;
  mpfr_mul_2si(threshold.raw_mutable(), threshold.raw(), -precision_bits / 2, MPFR_RNDN);

  std::optional<IntegerRelation> best;
  for (const auto& row : red.basis) {
    std::vector<mpz_class> k(row.begin(), row.begin() + static_cast<long>(m));
    bool nonzero = false, bounded = true;
    for (const auto& ki : k) {
      if (ki != 0) nonzero = true;
      if (abs(ki) > max_coeff) bounded = false;
    }
    if (!nonzero || !bounded) continue;
    BigFloat res = relation_residual(k, xs, work);
    if (res > threshold) continue;
    // Sign-normalize: first nonzero coefficient positive.
    for (const auto& ki : k) {
      if (ki == 0) continue;
      if (ki < 0) {
        for (auto& kj : k) kj = -kj;
      }
      break;
    }
    if (!best || res < best->residual) {
      best = IntegerRelation{std::move(k), res.at_precision(precision_bits)};
    }
  }
  return best;
}

}  // namespace kronlab
