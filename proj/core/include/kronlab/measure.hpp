#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kronlab/rational.hpp"
#include "kronlab/symbolic.hpp"

namespace kronlab {

/// Absolute separation below which two distinct numeric atom positions are
/// considered ambiguous rather than distinct.
inline constexpr double kPositionEpsilon = 1e-9;

struct Atom {
  RealValue position;
  Rational weight;  // > 0
};

/// Finite positive measure with finitely many atoms. Positions are pairwise
/// distinct: exactly in the symbolic tier, separated by more than
/// kPositionEpsilon in the numeric tier (a closer non-equal pair throws).
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  /// Merges exactly coinciding positions by weight addition, validates
  /// separation, sorts deterministically.
  static AtomicMeasure from_atoms(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  size_t size() const { return atoms_.size(); }
  Tier tier() const { return tier_; }
  Rational mass() const;

  friend bool operator==(const AtomicMeasure& a, const AtomicMeasure& b);

 private:
  std::vector<Atom> atoms_;
  Tier tier_ = Tier::symbolic;
};

/// Half-open constant-density piece [lower, upper) at the given level.
struct DensityPiece {
  double lower;
  double upper;
  double level;  // >= 0
};

/// Atomic part plus a piecewise-constant density part. The density pieces
/// are kept canonical: disjoint, positive level, sorted, touching pieces of
/// equal level merged.
class PiecewiseMeasure {
 public:
  PiecewiseMeasure() = default;
  PiecewiseMeasure(AtomicMeasure atomic) : atomic_(std::move(atomic)) {}  // NOLINT
  static PiecewiseMeasure from_parts(AtomicMeasure atomic, std::vector<DensityPiece> pieces);

  const AtomicMeasure& atomic() const { return atomic_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  bool is_atomic() const { return pieces_.empty(); }
  bool has_atoms() const { return !atomic_.empty(); }
  Tier tier() const { return atomic_.tier(); }

  double density_mass() const;
  /// Total mass; exact when purely atomic.
  double total_mass() const { return atomic_.mass().to_double() + density_mass(); }
  Rational atomic_mass() const { return atomic_.mass(); }

  friend bool operator==(const PiecewiseMeasure& a, const PiecewiseMeasure& b);

 private:
  AtomicMeasure atomic_;
  std::vector<DensityPiece> pieces_;
};

// --- pushforward algebra -------------------------------------------------

/// Image measure under x -> s*x; weights preserved, density levels divided
/// by |s|. s = 0 throws. Density pieces require a numeric-evaluable s.
PiecewiseMeasure scale_measure(const PiecewiseMeasure& m, const RealValue& s);

/// Image under x -> x + r (convolution with delta_r).
PiecewiseMeasure translate_measure(const PiecewiseMeasure& m, const RealValue& r);

/// sigma + (R_{-1})_* sigma; mass doubles, result is reflection-invariant.
/// An atom at 0 doubles its weight.
PiecewiseMeasure symmetrize(const PiecewiseMeasure& m);

/// Weighted superposition; weights positive, summing to 1 within 1e-12.
/// Coinciding atom positions merge by weight addition.
PiecewiseMeasure mix(const std::vector<PiecewiseMeasure>& measures,
                     const std::vector<Rational>& weights);

/// Conditional probability measure on [a, b]; throws when the measure of
/// the interval is zero. Atom positions must be numeric-evaluable.
PiecewiseMeasure restrict_measure(const PiecewiseMeasure& m, const Rational& a, const Rational& b);

// --- Bochner transform ----------------------------------------------------

/// sigma-hat(t) = integral of e^{2 pi i t x} d sigma(x), in closed form.
std::complex<double> bochner(const PiecewiseMeasure& m, double t);

// --- weak-topology metric -------------------------------------------------

/// Truncated metric over the trigonometric family: f_1 = 1, f_{2k} =
/// cos(2 pi q_k x), f_{2k+1} = sin(2 pi q_k x) with q_k the Calkin-Wilf
/// enumeration of the positive rationals.
struct MetricConfig {
  double lower = -16.0;
  double upper = 16.0;
  int depth = 64;
};

/// k-th positive rational of the fixed enumeration, 1-based.
Rational metric_frequency(int k);

double weak_distance(const PiecewiseMeasure& a, const PiecewiseMeasure& b,
                     const MetricConfig& cfg = {});

// --- singularity / absolute continuity ------------------------------------

enum class SingularityVerdict { singular, common_mass, inconclusive };

std::string singularity_verdict_name(SingularityVerdict v);

struct SingularityReport {
  SingularityVerdict verdict;
  PiecewiseMeasure common;  // the shared component when common_mass
};

/// Exact for these representations; "inconclusive" only when two numeric
/// positions agree within kPositionEpsilon without exact equality.
SingularityReport singularity_test(const PiecewiseMeasure& a, const PiecewiseMeasure& b);

/// Representation-level absolute continuity: support containment.
bool abs_continuity_test(const PiecewiseMeasure& a, const PiecewiseMeasure& b);

/// abs_continuity_test both ways (support equality; weights ignored).
bool equivalence_test(const PiecewiseMeasure& a, const PiecewiseMeasure& b);

// --- self-similarity -------------------------------------------------------

/// All scales s (from candidate ratios x_j / x_i) with scale(sigma, s)
/// equivalent to sigma. Contains 1; closed under s -> 1/s. Atom at 0 throws.
std::vector<RealValue> self_similarity_scales(const AtomicMeasure& sigma);

// shared position-matching primitive (exact match, or numeric pair within
// kPositionEpsilon); also used by the group-measure detector
bool positions_match(const RealValue& a, const RealValue& b);

}  // namespace kronlab
