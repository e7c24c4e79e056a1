#include "kronlab/rational.hpp"

#include <cmath>

namespace kronlab {

Rational Rational::from_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("Rational::from_double: non-finite value");
  mpq_class q(d);  // exact: doubles are dyadic
  return Rational(q);
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("Rational::parse: cannot parse '" + text + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + text + "'");
  q.canonicalize();
  return Rational(q);
}

Rational Rational::parse_decimal(const std::string& text) {
  // p[.frac][e|E exp] parsed exactly as num/10^k * 10^exp.
  std::string s = text;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = std::stol(s.substr(epos + 1));
    s = s.substr(0, epos);
  }
  auto dot = s.find('.');
  std::string digits = s;
  long frac_digits = 0;
  if (dot != std::string::npos) {
    frac_digits = static_cast<long>(s.size() - dot - 1);
    digits = s.substr(0, dot) + s.substr(dot + 1);
  }
  if (digits.empty() || digits == "-" || digits == "+") {
    throw std::invalid_argument("Rational::parse_decimal: cannot parse '" + text + "'");
  }
  mpz_class num;
  if (num.set_str(digits, 10) != 0) {
    throw std::invalid_argument("Rational::parse_decimal: cannot parse '" + text + "'");
  }
  mpz_class den(1);
  long net = exp10 - frac_digits;
  mpz_class ten(10), shift;
  mpz_pow_ui(shift.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(net >= 0 ? net : -net));
  if (net >= 0) num *= shift; else den = shift;
  return Rational(num, den);
}

Rational Rational::parse_decimal_or_fraction(const std::string& text) {
  if (text.find('/') != std::string::npos) return parse(text);
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos) {
    return parse_decimal(text);
  }
  return parse(text);
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  Rational base = *this;
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  Rational acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace kronlab
