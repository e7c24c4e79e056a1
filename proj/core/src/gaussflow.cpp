#include "kronlab/gaussflow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kronlab/rng.hpp"

namespace kronlab {

namespace {

struct SpectralLine {
  double freq;
  double weight;
};

// atoms plus deterministic quantile frequencies for the density part
std::vector<SpectralLine> spectral_lines(const ProcessSpec& spec) {
  std::vector<SpectralLine> lines;
  for (const auto& a : spec.spectral.atomic().atoms()) {
    double x = a.position.to_double_approx();
    if (x < 0) throw std::invalid_argument("simulate: spectral measure must live on [0, inf)");
    lines.push_back({x, a.weight.to_double()});
  }
  double dens_mass = spec.spectral.density_mass();
  if (dens_mass > 0) {
    if (spec.density_freqs < 1) throw std::invalid_argument("simulate: density_freqs < 1");
    const auto& pieces = spec.spectral.pieces();
    for (const auto& p : pieces) {
      if (p.lower < 0) throw std::invalid_argument("simulate: spectral measure must live on [0, inf)");
    }
    int m = spec.density_freqs;
    double per = dens_mass / m;
    // inverse CDF at quantile midpoints
    for (int i = 0; i < m; ++i) {
      double target = (i + 0.5) * per;
      double acc = 0;
      double freq = pieces.back().upper;
      for (const auto& p : pieces) {
        double mass = p.level * (p.upper - p.lower);
        if (acc + mass >= target) {
          freq = p.lower + (target - acc) / p.level;
          break;
        }
        acc += mass;
      }
      lines.push_back({freq, per});
    }
  }
  if (lines.empty()) throw std::invalid_argument("simulate: zero-mass spectral measure");
  double mass = 0;
  for (const auto& l : lines) mass += l.weight;
  if (mass <= 0) throw std::invalid_argument("simulate: zero-mass spectral measure");
  return lines;
}

}  // namespace

PathSample::PathSample(ProcessSpec spec, std::vector<double> times, std::vector<double> values)
    : spec_(std::move(spec)), times_(std::move(times)), values_(std::move(values)) {
  if (values_.size() != times_.size() * static_cast<size_t>(spec_.paths)) {
    throw std::invalid_argument("PathSample: dimension mismatch");
  }
}

PathSample simulate(const ProcessSpec& spec) {
  if (spec.paths < 1) throw std::invalid_argument("simulate: paths < 1");
  if (spec.grid.count < 1) throw std::invalid_argument("simulate: empty grid");
  if (spec.grid.step <= 0) throw std::invalid_argument("simulate: step <= 0");
  std::vector<SpectralLine> lines = spectral_lines(spec);

  std::vector<double> times(spec.grid.count);
  for (int i = 0; i < spec.grid.count; ++i) times[i] = spec.grid.t0 + i * spec.grid.step;

  std::vector<double> values(static_cast<size_t>(spec.paths) * times.size(), 0.0);
  for (int p = 0; p < spec.paths; ++p) {
    for (size_t l = 0; l < lines.size(); ++l) {
      CounterRng rng(mix_key(spec.seed, static_cast<uint64_t>(p), static_cast<uint64_t>(l)));
      double a, b;
      rng.next_normal_pair(a, b);
      double amp = std::sqrt(2.0 * lines[l].weight);
      double w = 2.0 * M_PI * lines[l].freq;
      for (size_t i = 0; i < times.size(); ++i) {
        values[static_cast<size_t>(p) * times.size() + i] +=
            amp * (a * std::cos(w * times[i]) + b * std::sin(w * times[i]));
      }
    }
  }
  return PathSample(spec, std::move(times), std::move(values));
}

CovarianceReport empirical_autocovariance(const PathSample& sample, const std::vector<double>& lags) {
  const SimGrid& g = sample.spec().grid;
  CovarianceReport rep;
  PiecewiseMeasure sym = symmetrize(sample.spec().spectral);
  for (double lag : lags) {
    double ks = lag / g.step;
    long k = std::lround(ks);
    if (std::fabs(ks - static_cast<double>(k)) > 1e-9 || k < 0 || k >= g.count) {
      throw std::invalid_argument("empirical_autocovariance: lag not representable on the grid");
    }
    int usable = g.count - static_cast<int>(k);
    double mean = 0;
    std::vector<double> per_path(sample.paths());
    for (int p = 0; p < sample.paths(); ++p) {
      double acc = 0;
      for (int i = 0; i < usable; ++i) {
        acc += sample.value(p, i) * sample.value(p, i + static_cast<int>(k));
      }
      per_path[p] = acc / usable;
      mean += per_path[p];
    }
    mean /= sample.paths();
    double var = 0;
    for (double v : per_path) var += (v - mean) * (v - mean);
    double se = sample.paths() > 1
                    ? std::sqrt(var / (sample.paths() - 1) / sample.paths())
                    : 1.0;
    rep.lags.push_back(lag);
    rep.empirical.push_back(mean);
    rep.theoretical.push_back(bochner(sym, lag).real());
    rep.stderr_.push_back(se > 0 ? se : 1e-300);
  }
  return rep;
}

PathSample rescale_paths(const PathSample& sample, double s) {
  if (s <= 0) throw std::invalid_argument("rescale_paths: s must be positive");
  ProcessSpec spec = sample.spec();
  spec.spectral = scale_measure(spec.spectral, RealValue(BigFloat::from_double(s)));
  return simulate(spec);
}

std::vector<SpectralPoint> spectral_estimate(const PathSample& sample,
                                             const std::vector<double>& freq_grid) {
  const auto& atoms = sample.spec().spectral.atomic().atoms();
  if (atoms.size() >= 2) {
    double min_gap = 1e300;
    for (size_t i = 0; i < atoms.size(); ++i) {
      for (size_t j = i + 1; j < atoms.size(); ++j) {
        min_gap = std::min(min_gap, std::fabs(atoms[i].position.to_double_approx() -
                                              atoms[j].position.to_double_approx()));
      }
    }
    double span = sample.spec().grid.step * sample.spec().grid.count;
    if (span < 4.0 / min_gap) {
      throw std::invalid_argument("spectral_estimate: insufficient span to resolve the atoms");
    }
  }

  const int n = sample.time_count();
  const int paths = sample.paths();
  std::vector<SpectralPoint> out;
  out.reserve(freq_grid.size());
  std::vector<double> per_path(paths);
  for (double f : freq_grid) {
    // per-path periodogram |DFT|^2 / N^2 via a rotation recurrence
    double c0 = std::cos(-2.0 * M_PI * f * sample.times()[0]);
    double s0 = std::sin(-2.0 * M_PI * f * sample.times()[0]);
    double cr = std::cos(-2.0 * M_PI * f * sample.spec().grid.step);
    double sr = std::sin(-2.0 * M_PI * f * sample.spec().grid.step);
    double mean = 0;
    for (int p = 0; p < paths; ++p) {
      double re = 0, im = 0, cc = c0, ss = s0;
      for (int i = 0; i < n; ++i) {
        double v = sample.value(p, i);
        re += v * cc;
        im += v * ss;
        double nc = cc * cr - ss * sr;
        ss = cc * sr + ss * cr;
        cc = nc;
      }
      per_path[p] = (re * re + im * im) / (static_cast<double>(n) * n);
      mean += per_path[p];
    }
    mean /= paths;
    double var = 0;
    for (double v : per_path) var += (v - mean) * (v - mean);
    double se = paths > 1 ? std::sqrt(var / (paths - 1) / paths) : 1.0;
    out.push_back({f, mean, se});
  }
  return out;
}

std::vector<SpectralPoint> spectral_peaks(const std::vector<SpectralPoint>& periodogram,
                                          int max_peaks, double min_separation) {
  std::vector<SpectralPoint> maxima;
  for (size_t i = 0; i < periodogram.size(); ++i) {
    double left = i > 0 ? periodogram[i - 1].power : -1;
    double right = i + 1 < periodogram.size() ? periodogram[i + 1].power : -1;
    if (periodogram[i].power >= left && periodogram[i].power >= right) {
      maxima.push_back(periodogram[i]);
    }
  }
  std::sort(maxima.begin(), maxima.end(),
            [](const SpectralPoint& a, const SpectralPoint& b) { return a.power > b.power; });
  std::vector<SpectralPoint> out;
  for (const auto& m : maxima) {
    if (static_cast<int>(out.size()) >= max_peaks) break;
    bool close_by = false;
    for (const auto& o : out) {
      if (std::fabs(o.frequency - m.frequency) < min_separation) close_by = true;
    }
    if (!close_by) out.push_back(m);
  }
  return out;
}

RigidityCheckReport rigidity_check(const PathSample& sample, double t_witness, double tol) {
  ProcessSpec shifted_spec = sample.spec();
  shifted_spec.grid.t0 += t_witness;
  PathSample shifted = simulate(shifted_spec);

  RigidityCheckReport rep;
  rep.t_witness = t_witness;
  rep.tol = tol;
  PiecewiseMeasure sym = symmetrize(sample.spec().spectral);
  double cov0 = bochner(sym, 0).real();
  rep.variance = cov0;
  rep.theoretical = 2.0 * (cov0 - bochner(sym, t_witness).real());

  const int n = sample.time_count();
  double mean = 0;
  std::vector<double> per_path(sample.paths());
  for (int p = 0; p < sample.paths(); ++p) {
    double acc = 0;
    for (int i = 0; i < n; ++i) {
      double d = shifted.value(p, i) - sample.value(p, i);
      acc += d * d;
    }
    per_path[p] = acc / n;
    mean += per_path[p];
  }
  mean /= sample.paths();
  rep.empirical = mean;
  double var = 0;
  for (double v : per_path) var += (v - mean) * (v - mean);
  rep.stderr_ = sample.paths() > 1 ? std::sqrt(var / (sample.paths() - 1) / sample.paths()) : 1.0;
  rep.pass = rep.theoretical < tol * rep.variance && rep.empirical < tol * rep.variance;
  return rep;
}

GaussianityReport::TimePoint omnibus_normality(const std::vector<double>& values) {
  GaussianityReport::TimePoint tp;
  const double n = static_cast<double>(values.size());
  if (values.size() < 20) throw std::invalid_argument("omnibus_normality: need >= 20 samples");
  double mean = 0;
  for (double v : values) mean += v;
  mean /= n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : values) {
    double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 < 1e-30) {
    tp.degenerate = true;
    return tp;
  }
  double g1 = m3 / std::pow(m2, 1.5);
  double b2 = m4 / (m2 * m2);

  // D'Agostino (1970) transform of the sample skewness
  double y = g1 * std::sqrt((n + 1) * (n + 3) / (6 * (n - 2)));
  double beta2 = 3.0 * (n * n + 27 * n - 70) * (n + 1) * (n + 3) /
                 ((n - 2) * (n + 5) * (n + 7) * (n + 9));
  double w2 = -1 + std::sqrt(2 * (beta2 - 1));
  double delta = 1 / std::sqrt(std::log(std::sqrt(w2)));
  double alpha = std::sqrt(2 / (w2 - 1));
  double z1 = delta * std::log(y / alpha + std::sqrt((y / alpha) * (y / alpha) + 1));

  // Anscombe-Glynn (1983) transform of the sample kurtosis
  double eb2 = 3 * (n - 1) / (n + 1);
  double vb2 = 24 * n * (n - 2) * (n - 3) / ((n + 1) * (n + 1) * (n + 3) * (n + 5));
  double x = (b2 - eb2) / std::sqrt(vb2);
  double beta1 = 6 * (n * n - 5 * n + 2) / ((n + 7) * (n + 9)) *
                 std::sqrt(6 * (n + 3) * (n + 5) / (n * (n - 2) * (n - 3)));
  double acap = 6 + 8 / beta1 * (2 / beta1 + std::sqrt(1 + 4 / (beta1 * beta1)));
  double inner = (1 - 2 / acap) / (1 + x * std::sqrt(2 / (acap - 4)));
  double z2 = ((1 - 2 / (9 * acap)) - std::cbrt(inner)) / std::sqrt(2 / (9 * acap));

  tp.k2_statistic = z1 * z1 + z2 * z2;
  tp.p_value = std::exp(-tp.k2_statistic / 2);  // chi^2 with 2 dof
  return tp;
}

GaussianityReport gaussianity_test(const PathSample& sample, double alpha) {
  if (sample.paths() < 100) throw std::invalid_argument("gaussianity_test: need >= 100 paths");
  GaussianityReport rep;
  rep.alpha = alpha;
  int count = std::min(10, sample.time_count());
  int stride = std::max(1, sample.time_count() / count);
  std::vector<double> marginal(sample.paths());
  bool any_reject = false, all_degenerate = true;
  for (int c = 0; c < count; ++c) {
    int idx = c * stride;
    if (idx >= sample.time_count()) break;
    for (int p = 0; p < sample.paths(); ++p) marginal[p] = sample.value(p, idx);
    GaussianityReport::TimePoint tp = omnibus_normality(marginal);
    tp.time = sample.times()[idx];
    if (!tp.degenerate) {
      all_degenerate = false;
      tp.rejected = tp.p_value < alpha;
      if (tp.rejected) any_reject = true;
    }
    rep.points.push_back(tp);
  }
  rep.pass = !any_reject && !all_degenerate;
  return rep;
}

}  // namespace kronlab
