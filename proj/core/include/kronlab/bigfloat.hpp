#pragma once

#include <mpfr.h>

#include <string>

#include "kronlab/rational.hpp"

namespace kronlab {

inline constexpr int kDefaultPrecisionBits = 128;
inline constexpr int kMinPrecisionBits = 53;

/// High-precision floating value (MPFR-backed) with explicit precision in
/// bits. Arithmetic rounds to the larger precision of the two operands.
/// Values are finite by construction; operations producing NaN/Inf throw.
class BigFloat {
 public:
  explicit BigFloat(int precision_bits = kDefaultPrecisionBits);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat from_double(double d, int precision_bits = kDefaultPrecisionBits);
  static BigFloat from_rational(const Rational& q, int precision_bits = kDefaultPrecisionBits);
  static BigFloat from_integer(const mpz_class& n, int precision_bits = kDefaultPrecisionBits);
  /// Parses a decimal string, rounding to the requested precision.
  static BigFloat from_string(const std::string& s, int precision_bits = kDefaultPrecisionBits);

  static BigFloat pi(int precision_bits = kDefaultPrecisionBits);
  static BigFloat euler_e(int precision_bits = kDefaultPrecisionBits);
  /// (1+sqrt(5))/2
  static BigFloat golden_ratio(int precision_bits = kDefaultPrecisionBits);
  static BigFloat sqrt_of(const Rational& q, int precision_bits = kDefaultPrecisionBits);
  static BigFloat cbrt_of(const Rational& q, int precision_bits = kDefaultPrecisionBits);

  int precision_bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  /// Same numeric value re-rounded at a new precision.
  BigFloat at_precision(int precision_bits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Decimal string with enough digits to round-trip at this precision.
  std::string to_string() const;

  BigFloat operator-() const;
  BigFloat abs() const;
  BigFloat inverse() const;
  BigFloat sqrt() const;
  BigFloat pow_si(long e) const;
  /// Nearest integer (round half away from zero, as mpfr_round).
  mpz_class round_to_integer() const;
  mpz_class floor_to_integer() const;
  /// Distance to the nearest integer, in [0, 1/2].
  BigFloat dist_to_nearest_int() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const Rational& b);
  friend BigFloat operator+(const BigFloat& a, const Rational& b);
  friend BigFloat operator-(const BigFloat& a, const Rational& b);

  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp(const Rational& q) const { return mpfr_cmp_q(v_, q.raw().get_mpq_t()); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) != 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) >= 0; }

  /// sin/cos of (2*pi*x), computed at this value's precision.
  BigFloat sin2pi() const;
  BigFloat cos2pi() const;

  const mpfr_t& raw() const { return v_; }
  mpfr_t& raw_mutable() { return v_; }

 private:
  void check_finite(const char* op) const;
  mpfr_t v_;
};

/// |e^{2*pi*i*a} - e^{2*pi*i*b}| = 2|sin(pi*(a-b))|, the chord metric on the
/// circle with arguments in turns.
BigFloat chord_distance_turns(const BigFloat& a, const BigFloat& b);
double chord_distance_turns(double a, double b);

/// Chord length subtended by a phase difference of `d` turns.
double chord_of_turns(double d);

}  // namespace kronlab
