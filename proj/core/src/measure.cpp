#include "kronlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace kronlab {

namespace {

bool exact_position_equal(const RealValue& a, const RealValue& b) {
  if (a.tier() == b.tier()) return a == b;
  // rational content compares exactly against a numeric value
  const RealValue& symside = a.is_symbolic() ? a : b;
  const RealValue& numside = a.is_symbolic() ? b : a;
  auto q = symside.as_rational();
  if (!q) return false;  // declared symbols are independent of any numeric value
  return numside.num().cmp(*q) == 0;
}

std::optional<double> numeric_view(const RealValue& v) {
  if (v.is_numeric()) return v.num().to_double();
  if (auto q = v.as_rational()) return q->to_double();
  return std::nullopt;
}

// Ambiguity exists only where measurement precision is finite: at least one
// genuinely numeric value within kPositionEpsilon of the other, not equal.
bool ambiguous_pair(const RealValue& a, const RealValue& b) {
  if (exact_position_equal(a, b)) return false;
  if (!a.is_numeric() && !b.is_numeric()) return false;
  auto da = numeric_view(a), db = numeric_view(b);
  if (!da || !db) return false;
  return std::fabs(*da - *db) <= kPositionEpsilon;
}

}  // namespace

bool positions_match(const RealValue& a, const RealValue& b) {
  return exact_position_equal(a, b) || ambiguous_pair(a, b);
}

AtomicMeasure AtomicMeasure::from_atoms(std::vector<Atom> atoms) {
  AtomicMeasure m;
  if (atoms.empty()) return m;

  bool any_numeric = false, any_symbolic = false;
  for (const auto& a : atoms) {
    if (a.weight <= Rational(0)) throw std::invalid_argument("AtomicMeasure: nonpositive weight");
    if (a.position.is_numeric()) {
      any_numeric = true;
    } else if (!a.position.sym().is_rational()) {
      any_symbolic = true;
    }
  }
  if (any_numeric && any_symbolic) {
    throw std::invalid_argument("AtomicMeasure: mixed symbolic and numeric positions");
  }
  m.tier_ = any_numeric ? Tier::numeric : Tier::symbolic;
  if (any_numeric) {
    // lift rational positions into the numeric tier
    int prec = kDefaultPrecisionBits;
    for (const auto& a : atoms) {
      if (a.position.is_numeric()) prec = std::max(prec, a.position.num().precision_bits());
    }
    for (auto& a : atoms) {
      if (a.position.is_symbolic()) a.position = RealValue(a.position.to_bigfloat(prec));
    }
  }

  // merge exact duplicates
  for (const auto& a : atoms) {
    bool merged = false;
    for (auto& e : m.atoms_) {
      if (exact_position_equal(e.position, a.position)) {
        e.weight += a.weight;
        merged = true;
        break;
      }
    }
    if (!merged) m.atoms_.push_back(a);
  }

  for (size_t i = 0; i < m.atoms_.size(); ++i) {
    for (size_t j = i + 1; j < m.atoms_.size(); ++j) {
      if (ambiguous_pair(m.atoms_[i].position, m.atoms_[j].position)) {
        throw std::invalid_argument("AtomicMeasure: positions " + m.atoms_[i].position.to_string() +
                                    " and " + m.atoms_[j].position.to_string() +
                                    " collide within the position tolerance");
      }
    }
  }

  std::sort(m.atoms_.begin(), m.atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });
  return m;
}

Rational AtomicMeasure::mass() const {
  Rational s(0);
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

bool operator==(const AtomicMeasure& a, const AtomicMeasure& b) {
  if (a.atoms_.size() != b.atoms_.size()) return false;
  for (size_t i = 0; i < a.atoms_.size(); ++i) {
    if (!(a.atoms_[i].position == b.atoms_[i].position) ||
        a.atoms_[i].weight != b.atoms_[i].weight) {
      return false;
    }
  }
  return true;
}

namespace {

std::vector<DensityPiece> normalize_pieces(std::vector<DensityPiece> pieces) {
  std::vector<DensityPiece> in;
  for (const auto& p : pieces) {
    if (p.level < 0) throw std::invalid_argument("DensityPiece: negative level");
    if (!(p.lower < p.upper)) throw std::invalid_argument("DensityPiece: empty or reversed interval");
    if (p.level > 0) in.push_back(p);
  }
  if (in.empty()) return {};
  std::vector<double> cuts;
  for (const auto& p : in) {
    cuts.push_back(p.lower);
    cuts.push_back(p.upper);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<DensityPiece> out;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double l = cuts[i], u = cuts[i + 1];
    double mid = l + (u - l) / 2;
    double level = 0;
    for (const auto& p : in) {
      if (p.lower <= mid && mid < p.upper) level += p.level;
    }
    if (level <= 0) continue;
    if (!out.empty() && out.back().upper == l && out.back().level == level) {
      out.back().upper = u;  // merge touching pieces of equal level
    } else {
      out.push_back({l, u, level});
    }
  }
  return out;
}

}  // namespace

PiecewiseMeasure PiecewiseMeasure::from_parts(AtomicMeasure atomic, std::vector<DensityPiece> pieces) {
  PiecewiseMeasure m;
  m.atomic_ = std::move(atomic);
  m.pieces_ = normalize_pieces(std::move(pieces));
  return m;
}

double PiecewiseMeasure::density_mass() const {
  double s = 0;
  for (const auto& p : pieces_) s += p.level * (p.upper - p.lower);
  return s;
}

bool operator==(const PiecewiseMeasure& a, const PiecewiseMeasure& b) {
  if (!(a.atomic_ == b.atomic_)) return false;
  if (a.pieces_.size() != b.pieces_.size()) return false;
  for (size_t i = 0; i < a.pieces_.size(); ++i) {
    if (a.pieces_[i].lower != b.pieces_[i].lower || a.pieces_[i].upper != b.pieces_[i].upper ||
        a.pieces_[i].level != b.pieces_[i].level) {
      return false;
    }
  }
  return true;
}

PiecewiseMeasure scale_measure(const PiecewiseMeasure& m, const RealValue& s) {
  if (s.is_zero()) throw std::invalid_argument("scale_measure: s = 0");
  std::vector<Atom> atoms;
  atoms.reserve(m.atomic().size());
  for (const auto& a : m.atomic().atoms()) {
    atoms.push_back({a.position * s, a.weight});
  }
  std::vector<DensityPiece> pieces;
  if (!m.pieces().empty()) {
    double sd;
    try {
      sd = s.to_double_approx();
    } catch (const std::domain_error&) {
      throw std::domain_error("scale_measure: density pieces require a numeric-evaluable scale");
    }
    for (const auto& p : m.pieces()) {
      if (sd > 0) {
        pieces.push_back({sd * p.lower, sd * p.upper, p.level / sd});
      } else {
        pieces.push_back({sd * p.upper, sd * p.lower, p.level / -sd});
      }
    }
  }
  return PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(atoms)), std::move(pieces));
}

PiecewiseMeasure translate_measure(const PiecewiseMeasure& m, const RealValue& r) {
  std::vector<Atom> atoms;
  atoms.reserve(m.atomic().size());
  for (const auto& a : m.atomic().atoms()) {
    atoms.push_back({a.position + r, a.weight});
  }
  std::vector<DensityPiece> pieces;
  if (!m.pieces().empty()) {
    double rd;
    try {
      rd = r.to_double_approx();
    } catch (const std::domain_error&) {
      throw std::domain_error("translate_measure: density pieces require a numeric-evaluable shift");
    }
    for (const auto& p : m.pieces()) pieces.push_back({p.lower + rd, p.upper + rd, p.level});
  }
  return PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(atoms)), std::move(pieces));
}

PiecewiseMeasure symmetrize(const PiecewiseMeasure& m) {
  PiecewiseMeasure reflected = scale_measure(m, RealValue(Rational(-1)));
  std::vector<Atom> atoms = m.atomic().atoms();
  for (const auto& a : reflected.atomic().atoms()) atoms.push_back(a);
  std::vector<DensityPiece> pieces = m.pieces();
  for (const auto& p : reflected.pieces()) pieces.push_back(p);
  return PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(atoms)), std::move(pieces));
}

PiecewiseMeasure mix(const std::vector<PiecewiseMeasure>& measures,
                     const std::vector<Rational>& weights) {
  if (measures.size() != weights.size() || measures.empty()) {
    throw std::invalid_argument("mix: measures and weights must have equal nonzero length");
  }
  Rational sum(0);
  for (const auto& w : weights) {
    if (w <= Rational(0)) throw std::invalid_argument("mix: nonpositive weight");
    sum += w;
  }
  if ((sum - Rational(1)).abs() > Rational(mpz_class(1), mpz_class(1000000000000L))) {
    throw std::invalid_argument("mix: weights sum to " + sum.to_string() + ", not 1");
  }
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
  for (size_t i = 0; i < measures.size(); ++i) {
    for (const auto& a : measures[i].atomic().atoms()) {
      atoms.push_back({a.position, a.weight * weights[i]});
    }
    double wd = weights[i].to_double();
    for (const auto& p : measures[i].pieces()) {
      pieces.push_back({p.lower, p.upper, p.level * wd});
    }
  }
  return PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(atoms)), std::move(pieces));
}

PiecewiseMeasure restrict_measure(const PiecewiseMeasure& m, const Rational& a, const Rational& b) {
  if (!(a < b)) throw std::invalid_argument("restrict_measure: empty interval");
  std::vector<Atom> kept;
  for (const auto& atom : m.atomic().atoms()) {
    bool inside;
    if (atom.position.is_numeric()) {
      inside = atom.position.num().cmp(a) >= 0 && atom.position.num().cmp(b) <= 0;
    } else if (auto q = atom.position.as_rational()) {
      inside = *q >= a && *q <= b;
    } else {
      throw std::domain_error("restrict_measure: symbolic position '" +
                              atom.position.to_string() + "' cannot be compared to the interval");
    }
    if (inside) kept.push_back(atom);
  }
  double ad = a.to_double(), bd = b.to_double();
  std::vector<DensityPiece> kept_pieces;
  for (const auto& p : m.pieces()) {
    double l = std::max(p.lower, ad), u = std::min(p.upper, bd);
    if (l < u) kept_pieces.push_back({l, u, p.level});
  }

  Rational atom_mass(0);
  for (const auto& atom : kept) atom_mass += atom.weight;
  double dens_mass = 0;
  for (const auto& p : kept_pieces) dens_mass += p.level * (p.upper - p.lower);

  if (atom_mass.is_zero() && dens_mass == 0) {
    throw std::domain_error("restrict_measure: measure of the interval is zero");
  }

  if (dens_mass == 0) {
    for (auto& atom : kept) atom.weight /= atom_mass;  // exact conditional measure
    return PiecewiseMeasure(AtomicMeasure::from_atoms(std::move(kept)));
  }
  double total = atom_mass.to_double() + dens_mass;
  Rational total_r = Rational::from_double(total);
  for (auto& atom : kept) atom.weight /= total_r;
  for (auto& p : kept_pieces) p.level /= total;
  return PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(kept)),
                                      std::move(kept_pieces));
}

std::complex<double> bochner(const PiecewiseMeasure& m, double t) {
  std::complex<double> acc(0, 0);
  for (const auto& a : m.atomic().atoms()) {
    double x = a.position.to_double_approx();
    double arg = 2.0 * M_PI * t * x;
    acc += a.weight.to_double() * std::complex<double>(std::cos(arg), std::sin(arg));
  }
  for (const auto& p : m.pieces()) {
    double len = p.upper - p.lower;
    double mid_arg = M_PI * t * (p.upper + p.lower);
    double z = t * len;
    double sinc = (z == 0.0) ? 1.0 : std::sin(M_PI * z) / (M_PI * z);
    acc += p.level * len * sinc * std::complex<double>(std::cos(mid_arg), std::sin(mid_arg));
  }
  return acc;
}

Rational metric_frequency(int k) {
  if (k < 1) throw std::invalid_argument("metric_frequency: k >= 1 required");
  // Calkin-Wilf: q_1 = 1, q_{n+1} = 1 / (2 floor(q_n) - q_n + 1)
  Rational q(1);
  for (int i = 1; i < k; ++i) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    q = (Rational(fl) * Rational(2) - q + Rational(1)).inverse();
  }
  return q;
}

namespace {

void check_support_in(const PiecewiseMeasure& m, const MetricConfig& cfg) {
  for (const auto& a : m.atomic().atoms()) {
    double x = a.position.to_double_approx();
    if (x < cfg.lower || x > cfg.upper) {
      throw std::domain_error("weak_distance: atom at " + std::to_string(x) +
                              " outside the metric interval");
    }
  }
  for (const auto& p : m.pieces()) {
    if (p.lower < cfg.lower || p.upper > cfg.upper) {
      throw std::domain_error("weak_distance: density support outside the metric interval");
    }
  }
}

}  // namespace

double weak_distance(const PiecewiseMeasure& a, const PiecewiseMeasure& b, const MetricConfig& cfg) {
  if (cfg.depth < 1) throw std::invalid_argument("weak_distance: depth >= 1 required");
  check_support_in(a, cfg);
  check_support_in(b, cfg);

  auto term = [](double delta) { return std::fabs(delta) / (1.0 + std::fabs(delta)); };

  double d = 0;
  double pow2 = 0.5;  // 2^{-n} for n = 1
  d += pow2 * term(a.total_mass() - b.total_mass());
  int n = 1;
  int k = 1;
  while (n < cfg.depth) {
    double q = metric_frequency(k).to_double();
    std::complex<double> diff = bochner(a, q) - bochner(b, q);
    ++n;
    pow2 *= 0.5;
    d += pow2 * term(diff.real());
    if (n >= cfg.depth) break;
    ++n;
    pow2 *= 0.5;
    d += pow2 * term(diff.imag());
    ++k;
  }
  return d;
}

std::string singularity_verdict_name(SingularityVerdict v) {
  switch (v) {
    case SingularityVerdict::singular: return "singular";
    case SingularityVerdict::common_mass: return "common-mass";
    case SingularityVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// overlap segments of positive density regions with min levels
std::vector<DensityPiece> common_density(const std::vector<DensityPiece>& a,
                                         const std::vector<DensityPiece>& b) {
  std::vector<DensityPiece> out;
  for (const auto& p : a) {
    for (const auto& q : b) {
      double l = std::max(p.lower, q.lower), u = std::min(p.upper, q.upper);
      if (l < u) out.push_back({l, u, std::min(p.level, q.level)});
    }
  }
  return out;
}

}  // namespace

SingularityReport singularity_test(const PiecewiseMeasure& a, const PiecewiseMeasure& b) {
  std::vector<Atom> shared;
  bool ambiguous = false;
  for (const auto& x : a.atomic().atoms()) {
    for (const auto& y : b.atomic().atoms()) {
      if (exact_position_equal(x.position, y.position)) {
        shared.push_back({x.position, std::min(x.weight, y.weight)});
      } else if (ambiguous_pair(x.position, y.position)) {
        ambiguous = true;
      }
    }
  }
  std::vector<DensityPiece> shared_density = common_density(a.pieces(), b.pieces());

  if (!shared.empty() || !shared_density.empty()) {
    return {SingularityVerdict::common_mass,
            PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(shared)),
                                         std::move(shared_density))};
  }
  if (ambiguous) return {SingularityVerdict::inconclusive, PiecewiseMeasure()};
  return {SingularityVerdict::singular, PiecewiseMeasure()};
}

namespace {

// positive-region containment with a relative slack for double endpoints
bool region_contained(const std::vector<DensityPiece>& inner,
                      const std::vector<DensityPiece>& outer) {
  const double slack = 1e-12;
  for (const auto& p : inner) {
    double cursor = p.lower;
    while (cursor < p.upper - slack) {
      bool advanced = false;
      for (const auto& q : outer) {
        if (q.lower <= cursor + slack && cursor < q.upper) {
          cursor = q.upper;
          advanced = true;
          break;
        }
      }
      if (!advanced) return false;
    }
  }
  return true;
}

}  // namespace

bool abs_continuity_test(const PiecewiseMeasure& a, const PiecewiseMeasure& b) {
  for (const auto& x : a.atomic().atoms()) {
    bool found = false;
    for (const auto& y : b.atomic().atoms()) {
      if (exact_position_equal(x.position, y.position)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return region_contained(a.pieces(), b.pieces());
}

bool equivalence_test(const PiecewiseMeasure& a, const PiecewiseMeasure& b) {
  return abs_continuity_test(a, b) && abs_continuity_test(b, a);
}

namespace {

// ratio a / b when it stays inside the representation
std::optional<RealValue> try_ratio(const RealValue& a, const RealValue& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_numeric() || b.is_numeric()) {
    if (a.is_numeric() && b.is_numeric()) return RealValue(a.num() / b.num());
    auto [x, y] = coerce_tiers(a, b);
    return RealValue(x.num() / y.num());
  }
  const SymbolicReal& num = a.sym();
  const SymbolicReal& den = b.sym();
  if (den.is_invertible_term()) return RealValue(num.divide_exact(den));
  // proportional multi-term values have a rational ratio
  Rational c;
  if (!den.rational_part().is_zero()) {
    c = num.rational_part() / den.rational_part();
  } else if (!den.terms().empty()) {
    const auto& [m, coeff] = *den.terms().begin();
    auto it = num.terms().find(m);
    if (it == num.terms().end()) return std::nullopt;
    c = it->second / coeff;
  } else {
    return std::nullopt;
  }
  if (num == den.scaled(c)) return RealValue(SymbolicReal(c));
  return std::nullopt;
}

}  // namespace

std::vector<RealValue> self_similarity_scales(const AtomicMeasure& sigma) {
  if (sigma.empty()) throw std::invalid_argument("self_similarity_scales: empty measure");
  for (const auto& a : sigma.atoms()) {
    if (a.position.is_zero()) {
      throw std::invalid_argument("self_similarity_scales: atom at 0");
    }
  }
  std::vector<RealValue> candidates;
  candidates.push_back(RealValue(Rational(1)));
  for (const auto& ai : sigma.atoms()) {
    for (const auto& aj : sigma.atoms()) {
      auto r = try_ratio(aj.position, ai.position);
      if (r) candidates.push_back(*r);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](const RealValue& x, const RealValue& y) { return x == y; }),
                   candidates.end());

  PiecewiseMeasure base(sigma);
  std::vector<RealValue> out;
  for (const auto& s : candidates) {
    if (s.is_zero()) continue;
    if (equivalence_test(scale_measure(base, s), base)) out.push_back(s);
  }
  return out;
}

}  // namespace kronlab
