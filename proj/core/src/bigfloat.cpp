#include "kronlab/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace kronlab {

namespace {

int checked_prec(int bits) {
  if (bits < kMinPrecisionBits) {
    throw std::invalid_argument("BigFloat: precision below " + std::to_string(kMinPrecisionBits) + " bits");
  }
  return bits;
}

}  // namespace

BigFloat::BigFloat(int precision_bits) {
  mpfr_init2(v_, checked_prec(precision_bits));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

void BigFloat::check_finite(const char* op) const {
  if (!mpfr_number_p(v_)) {
    throw std::domain_error(std::string("BigFloat: non-finite result in ") + op);
  }
}

BigFloat BigFloat::from_double(double d, int precision_bits) {
  if (!std::isfinite(d)) throw std::domain_error("BigFloat::from_double: non-finite value");
  BigFloat r(precision_bits);
  mpfr_set_d(r.v_, d, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_rational(const Rational& q, int precision_bits) {
  BigFloat r(precision_bits);
  mpfr_set_q(r.v_, q.raw().get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_integer(const mpz_class& n, int precision_bits) {
  BigFloat r(precision_bits);
  mpfr_set_z(r.v_, n.get_mpz_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_string(const std::string& s, int precision_bits) {
  BigFloat r(precision_bits);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 || !mpfr_number_p(r.v_)) {
    throw std::invalid_argument("BigFloat::from_string: cannot parse '" + s + "'");
  }
  return r;
}

BigFloat BigFloat::pi(int precision_bits) {
  BigFloat r(precision_bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::euler_e(int precision_bits) {
  BigFloat one(precision_bits);
  mpfr_set_ui(one.v_, 1, MPFR_RNDN);
  BigFloat r(precision_bits);
  mpfr_exp(r.v_, one.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::golden_ratio(int precision_bits) {
  BigFloat r = sqrt_of(Rational(5), precision_bits);
  mpfr_add_ui(r.v_, r.v_, 1, MPFR_RNDN);
  mpfr_div_ui(r.v_, r.v_, 2, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sqrt_of(const Rational& q, int precision_bits) {
  return from_rational(q, precision_bits).sqrt();
}

BigFloat BigFloat::cbrt_of(const Rational& q, int precision_bits) {
  BigFloat x = from_rational(q, precision_bits);
  BigFloat r(precision_bits);
  mpfr_cbrt(r.v_, x.v_, MPFR_RNDN);
  r.check_finite("cbrt");
  return r;
}

BigFloat BigFloat::at_precision(int precision_bits) const {
  BigFloat r(precision_bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string() const {
  // ceil(p * log10(2)) + 2 significant digits guarantee round-trip.
  size_t digits = static_cast<size_t>(std::ceil(precision_bits() * 0.3010299957)) + 2;
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  if (mpfr_zero_p(v_)) return "0";
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant = mant.substr(1);
  }
  // mant is the digit string with implied decimal point before the first
  // digit times 10^e; render as d.ddddEk.
  std::string out = sign + mant.substr(0, 1) + "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(e - 1));
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(precision_bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(precision_bits());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::inverse() const {
  if (is_zero()) throw std::domain_error("BigFloat: division by zero");
  BigFloat r(precision_bits());
  mpfr_ui_div(r.v_, 1, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sqrt() const {
  BigFloat r(precision_bits());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  r.check_finite("sqrt");
  return r;
}

BigFloat BigFloat::pow_si(long e) const {
  if (e < 0 && is_zero()) throw std::domain_error("BigFloat: zero to negative power");
  BigFloat r(precision_bits());
  mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
  r.check_finite("pow_si");
  return r;
}

mpz_class BigFloat::round_to_integer() const {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v_));
  mpfr_round(t, v_);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

mpz_class BigFloat::floor_to_integer() const {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v_));
  mpfr_floor(t, v_);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

BigFloat BigFloat::dist_to_nearest_int() const {
  mpz_class n = round_to_integer();
  BigFloat r = *this - BigFloat::from_integer(n, precision_bits());
  return r.abs();
}

namespace {

BigFloat binop(const BigFloat& a, const BigFloat& b,
               int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t), const char* name) {
  BigFloat r(std::max(a.precision_bits(), b.precision_bits()));
  f(r.raw_mutable(), a.raw(), b.raw(), MPFR_RNDN);
  if (!mpfr_number_p(r.raw())) {
    throw std::domain_error(std::string("BigFloat: non-finite result in ") + name);
  }
  return r;
}

}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binop(a, b, mpfr_add, "add"); }
BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binop(a, b, mpfr_sub, "sub"); }
BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binop(a, b, mpfr_mul, "mul"); }

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) throw std::domain_error("BigFloat: division by zero");
  return binop(a, b, mpfr_div, "div");
}

BigFloat operator*(const BigFloat& a, const Rational& b) {
  BigFloat r(a.precision_bits());
  mpfr_mul_q(r.raw_mutable(), a.raw(), b.raw().get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const Rational& b) {
  BigFloat r(a.precision_bits());
  mpfr_add_q(r.raw_mutable(), a.raw(), b.raw().get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const Rational& b) {
  BigFloat r(a.precision_bits());
  mpfr_sub_q(r.raw_mutable(), a.raw(), b.raw().get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sin2pi() const {
  // Reduce mod 1 first so the argument of mpfr_sin stays small; the
  // reduction is exact (subtraction of an integer).
  int p = precision_bits();
  BigFloat reduced = *this - BigFloat::from_integer(round_to_integer(), p);
  BigFloat angle(p + 32);
  mpfr_const_pi(angle.v_, MPFR_RNDN);
  mpfr_mul(angle.v_, angle.v_, reduced.v_, MPFR_RNDN);
  mpfr_mul_ui(angle.v_, angle.v_, 2, MPFR_RNDN);
  BigFloat r(p);
  mpfr_sin(r.v_, angle.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::cos2pi() const {
  int p = precision_bits();
  BigFloat reduced = *this - BigFloat::from_integer(round_to_integer(), p);
  BigFloat angle(p + 32);
  mpfr_const_pi(angle.v_, MPFR_RNDN);
  mpfr_mul(angle.v_, angle.v_, reduced.v_, MPFR_RNDN);
  mpfr_mul_ui(angle.v_, angle.v_, 2, MPFR_RNDN);
  BigFloat r(p);
  mpfr_cos(r.v_, angle.v_, MPFR_RNDN);
  return r;
}

BigFloat chord_distance_turns(const BigFloat& a, const BigFloat& b) {
  int p = std::max(a.precision_bits(), b.precision_bits());
  BigFloat d = (a - b).dist_to_nearest_int();  // in [0, 1/2]
  BigFloat angle(p + 32);
  mpfr_const_pi(angle.raw_mutable(), MPFR_RNDN);
  mpfr_mul(angle.raw_mutable(), angle.raw(), d.raw(), MPFR_RNDN);
  BigFloat r(p);
  mpfr_sin(r.raw_mutable(), angle.raw(), MPFR_RNDN);
  mpfr_mul_ui(r.raw_mutable(), r.raw(), 2, MPFR_RNDN);
  return r.abs();
}

double chord_of_turns(double d) {
  d -= std::round(d);
  return 2.0 * std::fabs(std::sin(M_PI * d));
}

double chord_distance_turns(double a, double b) { return chord_of_turns(a - b); }

}  // namespace kronlab
