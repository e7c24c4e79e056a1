#include <doctest.h>

#include <json.hpp>

#include "kronlab/serialize.hpp"

using namespace kronlab;

namespace {

RealValue rat(long n, long d = 1) { return RealValue(Rational(n, d)); }

PiecewiseMeasure sample_symbolic() {
  std::vector<Atom> a{{rat(3, 10), Rational(1, 2)},
                      {RealValue(SymbolicReal::symbol("tau")), Rational(1, 2)}};
  return PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(a)),
                                      {{0.0, 1.0, 0.25}});
}

PiecewiseMeasure sample_numeric() {
  std::vector<Atom> a{{RealValue(BigFloat::from_rational(Rational(1), 128)), Rational(1, 3)},
                      {RealValue(BigFloat::sqrt_of(Rational(2), 128)), Rational(2, 3)}};
  return PiecewiseMeasure(AtomicMeasure::from_atoms(std::move(a)));
}

}  // namespace

TEST_CASE("measure JSON round-trip is byte-stable") {
  for (const PiecewiseMeasure& m : {sample_symbolic(), sample_numeric()}) {
    std::string once = measure_to_json(m);
    PiecewiseMeasure back = measure_from_json(once, 128);
    CHECK(back == m);
    CHECK(measure_to_json(back) == once);
  }
}

TEST_CASE("measure text round-trip") {
  for (const PiecewiseMeasure& m : {sample_symbolic(), sample_numeric()}) {
    std::string text = measure_to_text(m);
    PiecewiseMeasure back = measure_from_text(text, 128);
    CHECK(back == m);
    CHECK(measure_to_text(back) == text);
  }
}

TEST_CASE("csv atom lists") {
  PiecewiseMeasure m(sample_numeric());
  std::string csv = measure_to_csv(m);
  PiecewiseMeasure back = measure_from_csv(csv, 128, true);
  CHECK(back == m);

  std::string dup = "pos,weight\n1/2,1/4\n1/2,1/4\n";
  std::string warning;
  PiecewiseMeasure merged = measure_from_csv(dup, 128, true, &warning);
  CHECK(merged.atomic().size() == 1);
  CHECK(merged.atomic().atoms()[0].weight == Rational(1, 2));
  CHECK(!warning.empty());
  CHECK_THROWS(measure_from_csv(dup, 128, false));
  CHECK_THROWS(measure_to_csv(sample_symbolic()));  // density has no CSV form
}

TEST_CASE("group slice JSON lists words and canonical values") {
  GroupSlice s = expand_group({rat(2)}, 1);
  auto j = nlohmann::json::parse(group_slice_to_json(s));
  REQUIRE(j["elements"].size() == 3);
  CHECK(j["elements"][0]["word"] == nlohmann::json::array({0}));
  CHECK(j["elements"][0]["value"] == "1/1");
  CHECK(j["tier"] == "symbolic");
}

TEST_CASE("witness JSON carries the exact time and bounds") {
  ApproxWitness w;
  w.t = BigFloat::sqrt_of(Rational(2), 128);
  w.residuals = {0.0, 0.01};
  w.max_residual = 0.01;
  w.method = WitnessMethod::lattice;
  w.search_bound = 100.0;
  auto j = nlohmann::json::parse(witness_to_json(w));
  CHECK(j["method"] == "lattice");
  CHECK(BigFloat::from_string(j["t"].get<std::string>(), 128) == w.t);
  CHECK(j["residuals"].size() == 2);
}

TEST_CASE("binary path format round-trips") {
  ProcessSpec spec;
  spec.spectral = PiecewiseMeasure(AtomicMeasure::from_atoms({{rat(1), Rational(1)}}));
  spec.grid = {0.0, 0.5, 16};
  spec.paths = 3;
  spec.seed = 77;
  PathSample s = simulate(spec);
  std::vector<uint8_t> bytes = paths_to_binary(s);
  BinaryPaths bp = paths_from_binary(bytes);
  CHECK(bp.seed == 77);
  CHECK(bp.paths == 3);
  CHECK(bp.grid.count == 16);
  CHECK(bp.values == s.raw_values());
  CHECK(bp.measure_hash == fnv1a64(measure_to_json(spec.spectral)));
  bytes[0] = 'X';
  CHECK_THROWS(paths_from_binary(bytes));
}

TEST_CASE("paths CSV has one column per path") {
  ProcessSpec spec;
  spec.spectral = PiecewiseMeasure(AtomicMeasure::from_atoms({{rat(1), Rational(1)}}));
  spec.grid = {0.0, 1.0, 4};
  spec.paths = 2;
  PathSample s = simulate(spec);
  std::string csv = paths_to_csv(s);
  CHECK(csv.rfind("time,path0,path1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("numeric constant parsing") {
  CHECK(parse_numeric_constant("pi", 128) == BigFloat::pi(128));
  CHECK(parse_numeric_constant("sqrt(2)", 128) == BigFloat::sqrt_of(Rational(2), 128));
  CHECK(parse_numeric_constant("cbrt(2)", 128) == BigFloat::cbrt_of(Rational(2), 128));
  CHECK(parse_numeric_constant("phi", 128) == BigFloat::golden_ratio(128));
  CHECK(parse_numeric_constant("3/10", 128) == BigFloat::from_rational(Rational(3, 10), 128));
  CHECK(parse_numeric_constant("0.25", 128) == BigFloat::from_rational(Rational(1, 4), 128));
  CHECK(parse_numeric_constant("2*pi", 128) ==
        BigFloat::pi(128) * BigFloat::from_rational(Rational(2), 128));
  CHECK_THROWS(parse_numeric_constant("sqrt(", 128));
  CHECK(parse_real("0/1 + 1/1*tau^1", Tier::symbolic).sym() == SymbolicReal::symbol("tau"));
}
