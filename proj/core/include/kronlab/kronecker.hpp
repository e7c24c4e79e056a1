#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kronlab/measure.hpp"
#include "kronlab/qindep.hpp"

namespace kronlab {

/// Approximation instance: find t with e^{2 pi i t x_j} close to
/// e^{2 pi i phase_j} for every j.
struct UnimodularTarget {
  std::vector<BigFloat> points;   // nonzero, pairwise distinct
  std::vector<Rational> phases;   // in [0, 1)
};

enum class WitnessMethod { grid, lattice };

std::string witness_method_name(WitnessMethod m);

struct ApproxWitness {
  BigFloat t;                     // > 0
  std::vector<double> residuals;  // |e^{2 pi i t x_j} - e^{2 pi i phase_j}|
  double max_residual = 0;
  WitnessMethod method = WitnessMethod::grid;
  double search_bound = 0;        // largest t examined by the search
};

struct SolveOptions {
  double eps = 0.05;
  double t_min = 1.0;
  WitnessMethod method = WitnessMethod::lattice;
  long grid_budget = 100000000;   // grid evaluations
  long rounding_budget = 10000;   // lattice rounding attempts
  int precision_bits = kDefaultPrecisionBits;
  bool grid_fallback = true;      // lattice falls back to grid on failure
};

struct SolveResult {
  bool found = false;
  std::optional<ApproxWitness> witness;  // best seen even when !found
  long evaluations = 0;
  std::string note;  // "not-found(budget)" when the budget ran out
};

/// Solves the Kronecker approximation problem. method = grid scans an
/// arithmetic t grid with step <= eps / (2 pi max|x_j|) (the brute-force
/// oracle); method = lattice anchors t = (phase_a + M) / x_a on each
/// frequency in turn and solves the remaining inhomogeneous simultaneous
/// approximation in the integer M by LLL plus nearest-plane rounding,
/// falling back to the grid when allowed. Returns the smallest-t witness
/// among successes of the fixed search schedule.
SolveResult solve_kronecker_approx(const UnimodularTarget& target, const SolveOptions& opt = {});

/// Dirichlet instance: all phases 0 over the atom positions of sigma.
SolveResult rigidity_witness(const AtomicMeasure& sigma, const SolveOptions& opt = {});

/// Recomputes a witness's residuals from scratch at the given precision.
std::vector<double> witness_residuals(const BigFloat& t, const UnimodularTarget& target,
                                      int precision_bits);

// --- construction of Q-independent point sets ------------------------------

struct BuildOptions {
  uint64_t seed = 0;
  int max_rounds = 10;
  SearchBounds bounds;
  std::optional<Rational> lower;  // default: min(y) - delta
  std::optional<Rational> upper;  // default: max(y) + delta
  std::string fresh_prefix = "t";
};

struct KroneckerSetSpec {
  enum class Certificate { symbolic_fresh_transcendental, numeric_no_relation };
  std::vector<RealValue> points;
  Certificate certificate;
  SearchBounds bounds;
  GroupSlice slice;
  std::vector<RealValue> realized_set;  // L = union over slice of h * points
  int rounds_used = 0;
};

/// Perturbs the targets into points whose slice orbit L is Q-independent:
/// symbolic tier adds (delta/2) * fresh basis symbols (exact by the variety
/// argument); numeric tier rejection-samples until the relation search finds
/// nothing within bounds. Requires a non-dependent slice verdict.
KroneckerSetSpec build_kronecker_points(const std::vector<Rational>& targets, const Rational& delta,
                                        const GroupSlice& slice, Tier tier,
                                        const BuildOptions& opt = {});

/// x_i = h^{2i} q_i with q_i a rational rounding of y_i / h^{2i} within
/// delta / h^{2i} (dyadic rounding in the numeric tier; q_i = y_i in the
/// symbolic tier, where the window is not evaluable).
std::vector<RealValue> korner_points(const RealValue& h, const std::vector<Rational>& targets,
                                     const Rational& delta);

// --- statistical verification ----------------------------------------------

struct KroneckerVerifyReport {
  struct Trial {
    std::vector<Rational> phases;
    bool success = false;
    double residual = 0;  // achieved max residual (best seen on failure)
    std::string note;
  };
  std::vector<Trial> trials;
  int successes = 0;
  double success_fraction = 0;
  double max_residual_among_successes = 0;
};

/// Runs solve_kronecker_approx over `trials` random phase vectors (seeded,
/// dyadic). Failures are data, not errors.
KroneckerVerifyReport verify_kronecker_property(const AtomicMeasure& sigma, int trials,
                                                const SolveOptions& opt, uint64_t seed);

// --- weak-convergence checker ----------------------------------------------

/// Target of a weak limit: constant + coefficient * character, with
/// |constant| + |coefficient| <= 1.
struct WeakTarget {
  std::complex<double> constant{0, 0};
  std::complex<double> char_coeff{0, 0};
  double char_freq = 0;

  static WeakTarget constant_target(std::complex<double> c) { return {c, {0, 0}, 0}; }
  static WeakTarget character(double u) { return {{0, 0}, {1, 0}, u}; }
  static WeakTarget affine(std::complex<double> c0, std::complex<double> c1, double u) {
    return {c0, c1, u};
  }
  double modulus_at(double x) const;
};

struct WeakConvergenceReport {
  struct Row {
    double scale = 1;
    std::vector<double> defects;  // sup over test frequencies, per t
    bool tail_below_tol = false;
    bool cannot_converge = false;   // atomic obstruction to |target| < 1
    double obstruction_lower_bound = 0;  // >= 1 - max modulus on the atoms
  };
  std::vector<Row> rows;
  double tol = 0;
};

/// Computes the pairing defect sup_u |<xi_{s_j t} - g_j, xi_u>| in closed
/// form through the Bochner transform, per scale/target pair and time, and
/// reports whether the tail falls below tol. Purely atomic measures cannot
/// converge to targets of modulus < 1 on their atoms; such rows are flagged
/// with the L^2 lower bound.
WeakConvergenceReport weak_convergence_check(const PiecewiseMeasure& mu,
                                             const std::vector<double>& scales,
                                             const std::vector<WeakTarget>& targets,
                                             const std::vector<double>& ts,
                                             const std::vector<double>& test_freqs, double tol);

}  // namespace kronlab
