#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kronlab {

/// Arbitrary-precision rational, always kept canonical:
/// denominator > 0 and gcd(|num|, den) == 1.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : q_(num, den) { canonicalize(); }
  explicit Rational(const mpz_class& n) : q_(n) {}
  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { canonicalize(); }

  /// Exact conversion: every finite double is a dyadic rational.
  static Rational from_double(double d);

  /// Parses "p/q" or a plain integer "p". Throws std::invalid_argument.
  static Rational parse(const std::string& text);

  /// Parses a decimal literal like "0.3" or "-1.25e-3" exactly.
  static Rational parse_decimal(const std::string& text);

  /// Accepts either form: "p/q", an integer, or a decimal literal.
  static Rational parse_decimal_or_fraction(const std::string& text);

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  double to_double() const { return q_.get_d(); }

  /// Canonical text form "p/q" (denominator always printed).
  std::string to_string() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-q_), already_canonical{}); }
  Rational abs() const { return Rational(mpq_class(::abs(q_)), already_canonical{}); }
  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(1 / q_));
  }
  Rational pow(long e) const;

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ + b.q_), already_canonical{});
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ - b.q_), already_canonical{});
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ * b.q_), already_canonical{});
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(a.q_ / b.q_), already_canonical{});
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

 private:
  struct already_canonical {};
  Rational(mpq_class q, already_canonical) : q_(std::move(q)) {}
  void canonicalize() {
    if (q_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
  }

  mpq_class q_;
};

}  // namespace kronlab
