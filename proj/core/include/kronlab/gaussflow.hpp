#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kronlab/measure.hpp"

namespace kronlab {

struct SimGrid {
  double t0 = 0;
  double step = 1;
  int count = 0;
};

/// Spectral synthesis input: a finite positive measure on the nonnegative
/// half-line plus grid, path count and seed. Density parts enter through
/// density_freqs deterministic quantile frequencies (bias O(1/M)).
struct ProcessSpec {
  PiecewiseMeasure spectral;
  SimGrid grid;
  int paths = 1;
  uint64_t seed = 0;
  int density_freqs = 256;
};

/// Simulated paths; values regenerate bit-identically from the spec. The
/// process is X_t = sum_j sqrt(2 w_j) (A_j cos 2 pi x_j t + B_j sin 2 pi
/// x_j t) with A, B standard normals drawn per (path, line) from the
/// SplitMix64 + Box-Muller stream, so Cov(X_0, X_t) is the Bochner
/// transform of the symmetrized spectral measure.
class PathSample {
 public:
  PathSample() = default;
  PathSample(ProcessSpec spec, std::vector<double> times, std::vector<double> values);

  const ProcessSpec& spec() const { return spec_; }
  const std::vector<double>& times() const { return times_; }
  int paths() const { return spec_.paths; }
  int time_count() const { return static_cast<int>(times_.size()); }
  double value(int path, int idx) const { return values_[static_cast<size_t>(path) * times_.size() + idx]; }
  const std::vector<double>& raw_values() const { return values_; }

 private:
  ProcessSpec spec_;
  std::vector<double> times_;
  std::vector<double> values_;  // paths x times, row-major
};

PathSample simulate(const ProcessSpec& spec);

struct CovarianceReport {
  std::vector<double> lags;
  std::vector<double> empirical;
  std::vector<double> theoretical;
  std::vector<double> stderr_;
};

/// Cross-path covariance estimates (zero-mean process, so the plain product
/// estimator is unbiased); stderr from the path count. Lags must land on
/// the grid.
CovarianceReport empirical_autocovariance(const PathSample& sample, const std::vector<double>& lags);

/// The process (X_{st}): re-simulation with the same seed and grid against
/// the spectral measure scaled by s. s = 1 reproduces values bit-for-bit.
PathSample rescale_paths(const PathSample& sample, double s);

struct SpectralPoint {
  double frequency;
  double power;
  double stderr_;
};

/// Periodogram averaged over paths, normalized so an atom of weight w shows
/// expected power w at its frequency. Requires span >= 4 / min-gap of the
/// spectral atom frequencies.
std::vector<SpectralPoint> spectral_estimate(const PathSample& sample,
                                             const std::vector<double>& freq_grid);

/// Greedy separated local maxima of a periodogram, strongest first.
std::vector<SpectralPoint> spectral_peaks(const std::vector<SpectralPoint>& periodogram,
                                          int max_peaks, double min_separation);

struct RigidityCheckReport {
  double t_witness = 0;
  double theoretical = 0;  // 2 (cov(0) - cov(t))
  double empirical = 0;    // mean of (X_{u+t} - X_u)^2
  double stderr_ = 0;
  double variance = 0;     // cov(0)
  double tol = 0;
  bool pass = false;
};

RigidityCheckReport rigidity_check(const PathSample& sample, double t_witness, double tol);

struct GaussianityReport {
  struct TimePoint {
    double time = 0;
    double k2_statistic = 0;
    double p_value = 1;
    bool degenerate = false;
    bool rejected = false;
  };
  std::vector<TimePoint> points;
  double alpha = 0.01;
  bool pass = false;
};

/// D'Agostino-Pearson K^2 omnibus (skewness + kurtosis) on the marginal at
/// up to 10 grid times across paths. Degenerate-variance marginals are
/// reported, not crashed on.
GaussianityReport gaussianity_test(const PathSample& sample, double alpha);

/// The same omnibus statistic on an arbitrary sample; used for the
/// linear-functional checks.
GaussianityReport::TimePoint omnibus_normality(const std::vector<double>& values);

}  // namespace kronlab
