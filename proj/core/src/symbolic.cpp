#include "kronlab/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace kronlab {

Monomial Monomial::symbol(const std::string& name, int exponent) {
  if (name.empty()) throw std::invalid_argument("Monomial: empty symbol name");
  Monomial m;
  if (exponent != 0) m.exps_[name] = exponent;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (const auto& [sym, e] : o.exps_) {
    int ne = (r.exps_.count(sym) ? r.exps_[sym] : 0) + e;
    if (ne == 0) {
      r.exps_.erase(sym);
    } else {
      r.exps_[sym] = ne;
    }
  }
  return r;
}

Monomial Monomial::pow(int e) const {
  Monomial r;
  if (e == 0) return r;
  for (const auto& [sym, x] : exps_) r.exps_[sym] = x * e;
  return r;
}

std::string Monomial::to_string() const {
  if (exps_.empty()) return "1";
  std::string out;
  bool first = true;
  for (const auto& [sym, e] : exps_) {
    if (!first) out += "*";
    out += sym + "^" + std::to_string(e);
    first = false;
  }
  return out;
}

SymbolicReal SymbolicReal::symbol(const std::string& name) {
  return term(Rational(1), Monomial::symbol(name));
}

SymbolicReal SymbolicReal::term(const Rational& coeff, const Monomial& m) {
  SymbolicReal r;
  if (m.is_one()) {
    r.rational_ = coeff;
  } else if (!coeff.is_zero()) {
    r.terms_[m] = coeff;
  }
  return r;
}

bool SymbolicReal::is_invertible_term() const {
  if (is_rational()) return !rational_.is_zero();
  return rational_.is_zero() && terms_.size() == 1;
}

std::set<std::string> SymbolicReal::symbols() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [sym, e] : m.exponents()) out.insert(sym);
  }
  return out;
}

void SymbolicReal::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  if (m.is_one()) {
    rational_ += c;
    return;
  }
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SymbolicReal SymbolicReal::operator-() const { return scaled(Rational(-1)); }

SymbolicReal operator+(const SymbolicReal& a, const SymbolicReal& b) {
  SymbolicReal r = a;
  r.rational_ += b.rational_;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

SymbolicReal operator-(const SymbolicReal& a, const SymbolicReal& b) { return a + (-b); }

SymbolicReal operator*(const SymbolicReal& a, const SymbolicReal& b) {
  SymbolicReal r;
  r.rational_ = a.rational_ * b.rational_;
  for (const auto& [m, c] : a.terms_) r.add_term(m, c * b.rational_);
  for (const auto& [m, c] : b.terms_) r.add_term(m, c * a.rational_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

SymbolicReal SymbolicReal::scaled(const Rational& c) const {
  SymbolicReal r;
  if (c.is_zero()) return r;
  r.rational_ = rational_ * c;
  for (const auto& [m, x] : terms_) r.terms_[m] = x * c;
  return r;
}

SymbolicReal SymbolicReal::pow(int e) const {
  if (e == 0) return SymbolicReal(Rational(1));
  if (e < 0) {
    if (!is_invertible_term()) {
      throw std::domain_error("SymbolicReal: negative power of a non-invertible value");
    }
    if (is_rational()) return SymbolicReal(rational_.pow(e));
    const auto& [m, c] = *terms_.begin();
    return term(c.pow(e), m.pow(e));
  }
  SymbolicReal acc(Rational(1));
  SymbolicReal base = *this;
  int k = e;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

SymbolicReal SymbolicReal::divide_exact(const SymbolicReal& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("SymbolicReal: division by zero");
  if (divisor.is_rational()) return scaled(divisor.rational_.inverse());
  if (!divisor.is_invertible_term()) {
    throw std::domain_error("SymbolicReal: exact division requires a rational or single-term divisor");
  }
  return *this * divisor.pow(-1);
}

BigFloat SymbolicReal::eval(const std::map<std::string, BigFloat>& assignment) const {
  int prec = kDefaultPrecisionBits;
  bool have = false;
  for (const auto& [name, v] : assignment) {
    prec = have ? std::min(prec, v.precision_bits()) : v.precision_bits();
    have = true;
  }
  BigFloat acc = BigFloat::from_rational(rational_, prec);
  for (const auto& [m, c] : terms_) {
    BigFloat t = BigFloat::from_rational(c, prec);
    for (const auto& [sym, e] : m.exponents()) {
      auto it = assignment.find(sym);
      if (it == assignment.end()) {
        throw std::invalid_argument("sym_eval: unassigned symbol '" + sym + "'");
      }
      t = t * it->second.pow_si(e);
    }
    acc = acc + t;
  }
  return acc;
}

std::string SymbolicReal::to_string() const {
  std::string out = rational_.to_string();
  for (const auto& [m, c] : terms_) {
    out += " + " + c.to_string() + "*" + m.to_string();
  }
  return out;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("SymbolicReal::parse: " + what + " at offset " + std::to_string(i) +
                                " in '" + s + "'");
  }
};

std::string read_integer(Cursor& c) {
  c.skip_ws();
  size_t start = c.i;
  if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) ++c.i;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  if (c.i == start || (c.i == start + 1 && !std::isdigit(static_cast<unsigned char>(c.s[start])))) {
    c.fail("expected integer");
  }
  return c.s.substr(start, c.i - start);
}

Rational read_rational(Cursor& c) {
  std::string num = read_integer(c);
  c.skip_ws();
  if (c.i < c.s.size() && c.s[c.i] == '/') {
    ++c.i;
    std::string den = read_integer(c);
    return Rational(mpz_class(num), mpz_class(den));
  }
  return Rational(mpz_class(num));
}

std::string read_symbol_name(Cursor& c) {
  c.skip_ws();
  size_t start = c.i;
  while (c.i < c.s.size() &&
         (std::isalnum(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '_')) {
    ++c.i;
  }
  if (c.i == start || std::isdigit(static_cast<unsigned char>(c.s[start]))) {
    c.fail("expected symbol name");
  }
  return c.s.substr(start, c.i - start);
}

}  // namespace

SymbolicReal SymbolicReal::parse(const std::string& text) {
  Cursor c{text};
  SymbolicReal out(read_rational(c));
  while (!c.eof()) {
    if (c.s[c.i] != '+') c.fail("expected '+'");
    ++c.i;
    Rational coeff = read_rational(c);
    c.skip_ws();
    if (c.i >= c.s.size() || c.s[c.i] != '*') c.fail("expected '*'");
    Monomial m;
    while (c.i < c.s.size() && c.s[c.i] == '*') {
      ++c.i;
      std::string name = read_symbol_name(c);
      c.skip_ws();
      if (c.i >= c.s.size() || c.s[c.i] != '^') c.fail("expected '^'");
      ++c.i;
      std::string e = read_integer(c);
      int exp = std::stoi(e);
      if (exp == 0) c.fail("zero exponent");
      m = m * Monomial::symbol(name, exp);
      c.skip_ws();
    }
    out = out + term(coeff, m);
  }
  return out;
}

bool operator<(const SymbolicReal& a, const SymbolicReal& b) {
  if (a.rational_ != b.rational_) return a.rational_ < b.rational_;
  return a.terms_ < b.terms_;
}

std::string tier_name(Tier t) { return t == Tier::symbolic ? "symbolic" : "numeric"; }

Tier tier_from_name(const std::string& name) {
  if (name == "symbolic") return Tier::symbolic;
  if (name == "numeric") return Tier::numeric;
  throw std::invalid_argument("unknown tier '" + name + "'");
}

bool RealValue::is_zero() const {
  return is_symbolic() ? sym().is_zero() : num().is_zero();
}

std::optional<Rational> RealValue::as_rational() const {
  if (is_symbolic() && sym().is_rational()) return sym().rational_part();
  return std::nullopt;
}

BigFloat RealValue::to_bigfloat(int precision_bits) const {
  if (is_numeric()) return num();
  if (sym().is_rational()) return BigFloat::from_rational(sym().rational_part(), precision_bits);
  throw std::domain_error("RealValue: symbolic value '" + sym().to_string() +
                          "' has no numeric form without an assignment");
}

double RealValue::to_double_approx() const {
  if (is_numeric()) return num().to_double();
  if (sym().is_rational()) return sym().rational_part().to_double();
  throw std::domain_error("RealValue: symbolic value has no numeric approximation");
}

RealValue RealValue::operator-() const {
  if (is_symbolic()) return RealValue(-sym());
  return RealValue(-num());
}

std::pair<RealValue, RealValue> coerce_tiers(const RealValue& a, const RealValue& b) {
  if (a.tier() == b.tier()) return {a, b};
  const RealValue& symside = a.is_symbolic() ? a : b;
  const RealValue& numside = a.is_symbolic() ? b : a;
  auto q = symside.as_rational();
  if (!q) {
    throw std::domain_error("mixed symbolic/numeric tiers: evaluate symbols first");
  }
  RealValue lifted(BigFloat::from_rational(*q, numside.num().precision_bits()));
  if (a.is_symbolic()) return {lifted, b};
  return {a, lifted};
}

RealValue operator+(const RealValue& a, const RealValue& b) {
  auto [x, y] = coerce_tiers(a, b);
  if (x.is_symbolic()) return RealValue(x.sym() + y.sym());
  return RealValue(x.num() + y.num());
}

RealValue operator*(const RealValue& a, const RealValue& b) {
  auto [x, y] = coerce_tiers(a, b);
  if (x.is_symbolic()) return RealValue(x.sym() * y.sym());
  return RealValue(x.num() * y.num());
}

RealValue RealValue::pow(int e) const {
  if (is_symbolic()) return RealValue(sym().pow(e));
  return RealValue(num().pow_si(e));
}

std::string RealValue::to_string() const {
  return is_symbolic() ? sym().to_string() : num().to_string();
}

bool operator==(const RealValue& a, const RealValue& b) {
  if (a.tier() != b.tier()) return false;
  if (a.is_symbolic()) return a.sym() == b.sym();
  return a.num() == b.num();
}

bool operator<(const RealValue& a, const RealValue& b) {
  if (a.tier() != b.tier()) return a.is_symbolic() && b.is_numeric();
  if (a.is_symbolic()) return a.sym() < b.sym();
  return a.num() < b.num();
}

}  // namespace kronlab
