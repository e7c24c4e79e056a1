#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kronlab/gaussflow.hpp"
#include "kronlab/kronecker.hpp"
#include "kronlab/measure.hpp"
#include "kronlab/qindep.hpp"

namespace kronlab {

/// Measure JSON: {"atoms":[{"pos":"<canonical real>","w":"p/q"}],
/// "density":[{"l":..,"u":..,"level":..}], "tier":"symbolic|numeric"}.
/// Round-trips byte-stably after canonicalization.
std::string measure_to_json(const PiecewiseMeasure& m);
PiecewiseMeasure measure_from_json(const std::string& text,
                                   int precision_bits = kDefaultPrecisionBits);

/// Plain-text measure form: a "tier" line, then "atom <w> <pos>" and
/// "density <l> <u> <level>" lines.
std::string measure_to_text(const PiecewiseMeasure& m);
PiecewiseMeasure measure_from_text(const std::string& text,
                                   int precision_bits = kDefaultPrecisionBits);

/// CSV atom list "pos,weight" with a header line. merge_duplicates = false
/// makes duplicate positions an error instead.
std::string measure_to_csv(const PiecewiseMeasure& m);
PiecewiseMeasure measure_from_csv(const std::string& text, int precision_bits,
                                  bool merge_duplicates, std::string* warning = nullptr);

std::string group_slice_to_json(const GroupSlice& slice);

std::string witness_to_json(const ApproxWitness& w);
std::string solve_result_to_json(const SolveResult& r);

std::string verify_report_to_json(const KroneckerVerifyReport& r);
std::string weak_report_to_json(const WeakConvergenceReport& r);
std::string covariance_report_to_json(const CovarianceReport& r);
std::string rigidity_report_to_json(const RigidityCheckReport& r);
std::string gaussianity_report_to_json(const GaussianityReport& r);
std::string spectral_points_to_json(const std::vector<SpectralPoint>& pts);
std::string independence_verdict_to_json(const IndependenceVerdict& v);

/// Paths CSV: first column time, one column per path.
std::string paths_to_csv(const PathSample& sample);

/// Compact binary path format: magic "KLPB", version, seed, grid, path
/// count, 64-bit FNV-1a hash of the spectral measure JSON, then row-major
/// doubles (little-endian as written).
std::vector<uint8_t> paths_to_binary(const PathSample& sample);
/// Header check + value extraction; returns times and values.
struct BinaryPaths {
  uint64_t seed;
  SimGrid grid;
  int paths;
  uint64_t measure_hash;
  std::vector<double> values;
};
BinaryPaths paths_from_binary(const std::vector<uint8_t>& bytes);

uint64_t fnv1a64(const std::string& data);

/// Parses a numeric-tier real constant: rational "p/q", decimal, pi, e,
/// phi, sqrt(r), cbrt(r), optionally "q*<atom>".
BigFloat parse_numeric_constant(const std::string& text,
                                int precision_bits = kDefaultPrecisionBits);

/// Parses a position in the requested tier (canonical symbolic text, or a
/// numeric constant expression).
RealValue parse_real(const std::string& text, Tier tier,
                     int precision_bits = kDefaultPrecisionBits);

}  // namespace kronlab
