#include <doctest.h>

#include "kronlab/relation.hpp"
#include "kronlab/rng.hpp"

using namespace kronlab;

namespace {

std::vector<mpz_class> coeffs(const IntegerRelation& r) { return r.coefficients; }

}  // namespace

TEST_CASE("recovers 1 + sqrt2 - (1 + sqrt2) = 0") {
  BigFloat r2 = BigFloat::sqrt_of(Rational(2), 192);
  std::vector<BigFloat> xs{BigFloat::from_rational(Rational(1), 192), r2,
                           BigFloat::from_rational(Rational(1), 192) + r2};
  auto rel = find_integer_relation(xs, 10, 128);
  REQUIRE(rel.has_value());
  CHECK(coeffs(*rel) == std::vector<mpz_class>{1, 1, -1});
  CHECK(rel->residual.to_double() < 1e-30);
}

TEST_CASE("recovers the golden-ratio relation") {
  BigFloat phi = BigFloat::golden_ratio(192);
  std::vector<BigFloat> xs{BigFloat::from_rational(Rational(1), 192), phi, phi * phi};
  auto rel = find_integer_relation(xs, 10, 128);
  REQUIRE(rel.has_value());
  CHECK(coeffs(*rel) == std::vector<mpz_class>{1, 1, -1});
}

TEST_CASE("sqrt2 yields none-found even at large coefficient bounds") {
  std::vector<BigFloat> xs{BigFloat::from_rational(Rational(1), 192),
                           BigFloat::sqrt_of(Rational(2), 192)};
  CHECK(!find_integer_relation(xs, 1000000, 128).has_value());
}

TEST_CASE("cube-root slice carries a small relation") {
  BigFloat c = BigFloat::cbrt_of(Rational(2), 192);
  std::vector<BigFloat> xs{BigFloat::from_rational(Rational(1), 192), c, c * c,
                           BigFloat::from_rational(Rational(2), 192)};
  auto rel = find_integer_relation(xs, 10, 128);
  REQUIRE(rel.has_value());
  // 1, 2^{1/3}, 2^{2/3} are independent over Q, so 2*1 - 2 = 0 is the unique
  // minimal relation up to sign
  CHECK(coeffs(*rel) == std::vector<mpz_class>{2, 0, 0, -1});
  CHECK(rel->residual.to_double() < 1e-30);
}

TEST_CASE("square-root radicals give none-found within acceptance bounds") {
  const int p = 192;
  std::vector<BigFloat> xs{BigFloat::from_rational(Rational(1), p), BigFloat::sqrt_of(Rational(2), p),
                           BigFloat::sqrt_of(Rational(3), p), BigFloat::sqrt_of(Rational(6), p)};
  CHECK(!find_integer_relation(xs, 10000, 128).has_value());
  // independent oracle: brute-force small-coefficient scan stays far from 0
  double x2 = xs[1].to_double(), x3 = xs[2].to_double(), x6 = xs[3].to_double();
  double min_abs = 1e300;
  for (int a = -20; a <= 20; ++a)
    for (int b = -20; b <= 20; ++b)
      for (int c = -20; c <= 20; ++c)
        for (int d = -20; d <= 20; ++d) {
          if (a == 0 && b == 0 && c == 0 && d == 0) continue;
          double v = std::fabs(a + b * x2 + c * x3 + d * x6);
          if (v < min_abs) min_abs = v;
        }
  CHECK(min_abs > 1e-5);
}

TEST_CASE("insufficient input precision is an error") {
  std::vector<BigFloat> xs{BigFloat::from_rational(Rational(1), 64),
                           BigFloat::sqrt_of(Rational(2), 64)};
  CHECK_THROWS_WITH_AS(static_cast<void>(find_integer_relation(xs, 10, 128)),
                       "find_integer_relation: insufficient precision", std::invalid_argument);
}

TEST_CASE("soundness: planted relations verify at doubled precision") {
  CounterRng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int p = 128, hi = 2 * p;
    size_t m = 3 + rng.next_u64() % 2;
    std::vector<mpz_class> k(m);
    std::vector<BigFloat> xs;
    for (size_t i = 0; i + 1 < m; ++i) {
      k[i] = static_cast<long>(rng.next_u64() % 19) - 9;
      xs.push_back(BigFloat::from_double(0.25 + 3.5 * rng.next_uniform(), hi));
    }
    long last = 1 + static_cast<long>(rng.next_u64() % 9);
    k[m - 1] = last;
    BigFloat acc(hi);
    for (size_t i = 0; i + 1 < m; ++i) {
      acc = acc + xs[i] * BigFloat::from_integer(k[i], hi);
    }
    xs.push_back(-(acc / BigFloat::from_integer(mpz_class(last), hi)));

    auto rel = find_integer_relation(xs, 100, p);
    REQUIRE(rel.has_value());
    BigFloat res2 = relation_residual(rel->coefficients, xs, hi);
    // contract: residual <= 10 * 2^{-p/2} * max|x| when re-evaluated
    BigFloat maxabs(hi);
    for (const auto& x : xs) {
      if (x.abs() > maxabs) maxabs = x.abs();
    }
    BigFloat bound = maxabs * BigFloat::from_rational(Rational(10), hi);
    mpfr_mul_2si(bound.raw_mutable(), bound.raw(), -p / 2, MPFR_RNDN);
    CHECK(res2 <= bound);
  }
}
