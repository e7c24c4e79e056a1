#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kronlab/bigfloat.hpp"
#include "kronlab/rational.hpp"

namespace kronlab {

/// Product of basis-symbol powers with nonzero integer exponents; the empty
/// map is the constant monomial 1. Basis symbols are identified by name and
/// treated as algebraically independent by declaration.
class Monomial {
 public:
  Monomial() = default;
  static Monomial one() { return Monomial(); }
  static Monomial symbol(const std::string& name, int exponent = 1);

  bool is_one() const { return exps_.empty(); }
  const std::map<std::string, int>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const;
  Monomial pow(int e) const;

  std::string to_string() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

 private:
  std::map<std::string, int> exps_;
};

/// Exact real: a rational plus a Q-linear combination of monomials over
/// declared transcendental symbols. Stored coefficients are never zero.
class SymbolicReal {
 public:
  SymbolicReal() = default;
  SymbolicReal(const Rational& q) : rational_(q) {}  // NOLINT
  SymbolicReal(long n) : rational_(Rational(n)) {}   // NOLINT
  static SymbolicReal symbol(const std::string& name);
  static SymbolicReal term(const Rational& coeff, const Monomial& m);

  const Rational& rational_part() const { return rational_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_rational() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && rational_.is_zero(); }
  /// True when the value is c*m for one monomial m (rational part zero),
  /// or a nonzero rational; such values have exact Laurent inverses.
  bool is_invertible_term() const;

  std::set<std::string> symbols() const;

  SymbolicReal operator-() const;
  friend SymbolicReal operator+(const SymbolicReal& a, const SymbolicReal& b);
  friend SymbolicReal operator-(const SymbolicReal& a, const SymbolicReal& b);
  friend SymbolicReal operator*(const SymbolicReal& a, const SymbolicReal& b);
  SymbolicReal scaled(const Rational& c) const;
  /// Integer power; negative exponents require is_invertible_term().
  SymbolicReal pow(int e) const;
  /// Exact quotient; defined when the divisor is a nonzero rational or a
  /// single monomial term (term-wise Laurent division). Throws otherwise.
  SymbolicReal divide_exact(const SymbolicReal& divisor) const;

  /// Evaluates under an assignment of every symbol to a numeric value, at
  /// the minimum precision among the assigned values.
  BigFloat eval(const std::map<std::string, BigFloat>& assignment) const;

  /// Canonical text form: "p/q" followed by " + c*sym^e[*sym^e...]" terms in
  /// monomial order. Parsing round-trips exactly.
  std::string to_string() const;
  static SymbolicReal parse(const std::string& text);

  friend bool operator==(const SymbolicReal& a, const SymbolicReal& b) {
    return a.rational_ == b.rational_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const SymbolicReal& a, const SymbolicReal& b) { return !(a == b); }
  /// Deterministic total order: rational part first, then terms.
  friend bool operator<(const SymbolicReal& a, const SymbolicReal& b);

 private:
  void add_term(const Monomial& m, const Rational& c);

  Rational rational_;
  std::map<Monomial, Rational> terms_;
};

enum class Tier { symbolic, numeric };

std::string tier_name(Tier t);
Tier tier_from_name(const std::string& name);

/// A real number in one of the two tiers. Rationals live in the symbolic
/// tier (empty term map); genuinely symbolic values cannot cross into the
/// numeric tier without an assignment.
class RealValue {
 public:
  RealValue() : v_(SymbolicReal()) {}
  RealValue(SymbolicReal s) : v_(std::move(s)) {}  // NOLINT
  RealValue(BigFloat n) : v_(std::move(n)) {}      // NOLINT
  RealValue(const Rational& q) : v_(SymbolicReal(q)) {}  // NOLINT

  Tier tier() const { return std::holds_alternative<SymbolicReal>(v_) ? Tier::symbolic : Tier::numeric; }
  bool is_symbolic() const { return tier() == Tier::symbolic; }
  bool is_numeric() const { return tier() == Tier::numeric; }

  const SymbolicReal& sym() const { return std::get<SymbolicReal>(v_); }
  const BigFloat& num() const { return std::get<BigFloat>(v_); }

  bool is_zero() const;
  /// Exact rational content when representable (symbolic tier, no terms).
  std::optional<Rational> as_rational() const;

  /// Numeric view: numeric tier as-is; symbolic tier only when rational.
  BigFloat to_bigfloat(int precision_bits = kDefaultPrecisionBits) const;
  double to_double_approx() const;

  RealValue operator-() const;
  friend RealValue operator+(const RealValue& a, const RealValue& b);
  friend RealValue operator*(const RealValue& a, const RealValue& b);
  RealValue pow(int e) const;

  std::string to_string() const;

  friend bool operator==(const RealValue& a, const RealValue& b);
  friend bool operator<(const RealValue& a, const RealValue& b);

 private:
  std::variant<SymbolicReal, BigFloat> v_;
};

/// Coerces mixed tiers for binary ops: a rational symbolic value converts to
/// the numeric tier; anything else mixed-tier throws.
std::pair<RealValue, RealValue> coerce_tiers(const RealValue& a, const RealValue& b);

}  // namespace kronlab
