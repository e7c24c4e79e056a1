#include <doctest.h>

#include <cmath>

#include "kronlab/measure.hpp"
#include "kronlab/rng.hpp"

using namespace kronlab;

namespace {

RealValue rat(long n, long d = 1) { return RealValue(Rational(n, d)); }

PiecewiseMeasure atoms(std::initializer_list<std::pair<RealValue, Rational>> list) {
  std::vector<Atom> a;
  for (const auto& [p, w] : list) a.push_back({p, w});
  return PiecewiseMeasure(AtomicMeasure::from_atoms(std::move(a)));
}

PiecewiseMeasure uniform(double l, double u, double level) {
  return PiecewiseMeasure::from_parts(AtomicMeasure(), {{l, u, level}});
}

PiecewiseMeasure random_numeric_measure(CounterRng& rng, int max_atoms = 4) {
  std::vector<Atom> a;
  int n = 1 + static_cast<int>(rng.next_u64() % max_atoms);
  for (int i = 0; i < n; ++i) {
    a.push_back({RealValue(BigFloat::from_double(rng.next_uniform() * 8.0 - 4.0, 128)),
                 Rational(1 + static_cast<long>(rng.next_u64() % 5), 5)});
  }
  return PiecewiseMeasure(AtomicMeasure::from_atoms(std::move(a)));
}

}  // namespace

TEST_CASE("scale_measure examples") {
  PiecewiseMeasure m = atoms({{rat(2), Rational(1, 2)}, {rat(3), Rational(1, 2)}});
  PiecewiseMeasure s = scale_measure(m, rat(-1));
  CHECK(s == atoms({{rat(-3), Rational(1, 2)}, {rat(-2), Rational(1, 2)}}));

  PiecewiseMeasure one = atoms({{rat(1), Rational(1)}});
  PiecewiseMeasure tau = scale_measure(one, RealValue(SymbolicReal::symbol("tau")));
  CHECK(tau.atomic().atoms()[0].position == RealValue(SymbolicReal::symbol("tau")));

  PiecewiseMeasure u = scale_measure(uniform(0, 1, 1.0), rat(2));
  REQUIRE(u.pieces().size() == 1);
  CHECK(u.pieces()[0].lower == 0.0);
  CHECK(u.pieces()[0].upper == 2.0);
  CHECK(u.pieces()[0].level == doctest::Approx(0.5));
  CHECK(u.total_mass() == doctest::Approx(1.0));
  CHECK_THROWS(scale_measure(m, rat(0)));
}

TEST_CASE("translate_measure examples") {
  PiecewiseMeasure m = atoms({{rat(1), Rational(1)}});
  CHECK(translate_measure(m, rat(0)) == m);

  PiecewiseMeasure two =
      atoms({{rat(1), Rational(1)}, {RealValue(BigFloat::sqrt_of(Rational(2))), Rational(1)}});
  PiecewiseMeasure moved = translate_measure(two, rat(-1));
  CHECK(moved.atomic().atoms()[0].position.to_double_approx() == doctest::Approx(0.0));
  CHECK(moved.atomic().atoms()[1].position.to_double_approx() ==
        doctest::Approx(std::sqrt(2.0) - 1));

  PiecewiseMeasure u = translate_measure(uniform(0, 1, 1.0), rat(3));
  CHECK(u.pieces()[0].lower == 3.0);
  CHECK(u.pieces()[0].upper == 4.0);
}

TEST_CASE("symmetrize examples") {
  PiecewiseMeasure m = atoms({{rat(1), Rational(1, 2)}});
  CHECK(symmetrize(m) == atoms({{rat(-1), Rational(1, 2)}, {rat(1), Rational(1, 2)}}));

  PiecewiseMeasure sym = atoms({{rat(-1), Rational(1)}, {rat(1), Rational(1)}});
  CHECK(symmetrize(sym) == atoms({{rat(-1), Rational(2)}, {rat(1), Rational(2)}}));

  PiecewiseMeasure u = symmetrize(uniform(0, 1, 1.0));
  CHECK(u.total_mass() == doctest::Approx(2.0));
  REQUIRE(u.pieces().size() == 1);  // touching equal levels merge
  CHECK(u.pieces()[0].lower == -1.0);
  CHECK(u.pieces()[0].upper == 1.0);

  // atom at 0 doubles
  PiecewiseMeasure z = symmetrize(atoms({{rat(0), Rational(1, 3)}}));
  CHECK(z == atoms({{rat(0), Rational(2, 3)}}));
}

TEST_CASE("mix examples") {
  PiecewiseMeasure a = atoms({{rat(1), Rational(1)}});
  PiecewiseMeasure b = atoms({{rat(2), Rational(1)}});
  CHECK(mix({a, b}, {Rational(1, 2), Rational(1, 2)}) ==
        atoms({{rat(1), Rational(1, 2)}, {rat(2), Rational(1, 2)}}));
  CHECK(mix({a, a}, {Rational(1, 2), Rational(1, 2)}) == a);

  // the common-factor measure eta = (sigma + sigma_s)/2 at s = sqrt2
  PiecewiseMeasure sigma = atoms({{RealValue(BigFloat::from_rational(Rational(1))), Rational(1)}});
  PiecewiseMeasure sigma_s = scale_measure(sigma, RealValue(BigFloat::sqrt_of(Rational(2))));
  PiecewiseMeasure eta = mix({sigma, sigma_s}, {Rational(1, 2), Rational(1, 2)});
  REQUIRE(eta.atomic().size() == 2);
  CHECK(eta.atomic().atoms()[0].weight == Rational(1, 2));
  CHECK(eta.atomic().atoms()[1].position.to_double_approx() == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS(mix({a, b}, {Rational(1, 2), Rational(1, 3)}));
}

TEST_CASE("restrict_measure examples") {
  PiecewiseMeasure m = atoms({{RealValue(Rational(1, 2)), Rational(2, 5)},
                              {rat(2), Rational(3, 5)}});
  PiecewiseMeasure r = restrict_measure(m, Rational(0), Rational(1));
  CHECK(r == atoms({{RealValue(Rational(1, 2)), Rational(1)}}));

  PiecewiseMeasure p = atoms({{rat(1, 4), Rational(1, 2)}, {rat(3, 4), Rational(1, 2)}});
  CHECK(restrict_measure(p, Rational(0), Rational(1)) == p);

  PiecewiseMeasure u = restrict_measure(uniform(0, 2, 1.0), Rational(0), Rational(1));
  REQUIRE(u.pieces().size() == 1);
  CHECK(u.pieces()[0].level == doctest::Approx(1.0));
  CHECK(u.total_mass() == doctest::Approx(1.0));

  CHECK_THROWS(restrict_measure(m, Rational(5), Rational(6)));
}

TEST_CASE("bochner closed forms") {
  PiecewiseMeasure m = atoms({{rat(2), Rational(1)}});
  std::complex<double> v = bochner(m, 0.25);
  CHECK(v.real() == doctest::Approx(-1.0));
  CHECK(std::fabs(v.imag()) < 1e-14);

  // symmetrized atom: 2 w cos(2 pi t x)
  PiecewiseMeasure s = symmetrize(atoms({{rat(3, 2), Rational(1, 4)}}));
  for (double t : {0.1, 0.37, 1.9}) {
    std::complex<double> got = bochner(s, t);
    CHECK(got.real() == doctest::Approx(2 * 0.25 * std::cos(2 * M_PI * t * 1.5)).epsilon(1e-12));
    CHECK(std::fabs(got.imag()) < 1e-12);
  }

  CHECK(std::abs(bochner(uniform(0, 1, 1.0), 1.0)) < 1e-14);
  CHECK(bochner(uniform(0, 1, 1.0), 0.0).real() == doctest::Approx(1.0));
}

TEST_CASE("weak_distance basics and a hand-computed truncation") {
  PiecewiseMeasure a = atoms({{rat(0), Rational(1)}});
  PiecewiseMeasure b = atoms({{rat(1, 2), Rational(1)}});
  MetricConfig cfg;
  cfg.lower = -1;
  cfg.upper = 1;
  cfg.depth = 5;
  CHECK(weak_distance(a, a, cfg) == doctest::Approx(0.0));
  CHECK(weak_distance(a, b, cfg) == doctest::Approx(weak_distance(b, a, cfg)));

  // depth 5 terms: mass diff 0; cos q1=1 gives |1-(-1)|=2 -> (1/4)(2/3);
  // sin q1 gives 0; cos q2=1/2 gives 1 -> (1/16)(1/2); sin q2 gives 1 ->
  // (1/32)(1/2)
  double expected = (1.0 / 4) * (2.0 / 3) + (1.0 / 16) * 0.5 + (1.0 / 32) * 0.5;
  CHECK(weak_distance(a, b, cfg) == doctest::Approx(expected).epsilon(1e-12));

  CHECK(metric_frequency(1) == Rational(1));
  CHECK(metric_frequency(2) == Rational(1, 2));
  CHECK(metric_frequency(3) == Rational(2));

  CHECK_THROWS(weak_distance(a, atoms({{rat(5), Rational(1)}}), cfg));
}

TEST_CASE("weak_distance triangle inequality on random triples") {
  CounterRng rng(31);
  MetricConfig cfg;
  cfg.lower = -8;
  cfg.upper = 8;
  cfg.depth = 24;
  for (int i = 0; i < 60; ++i) {
    CounterRng r1(rng.next_u64()), r2(rng.next_u64()), r3(rng.next_u64());
    PiecewiseMeasure x = random_numeric_measure(r1);
    PiecewiseMeasure y = random_numeric_measure(r2);
    PiecewiseMeasure z = random_numeric_measure(r3);
    double dxy = weak_distance(x, y, cfg), dyz = weak_distance(y, z, cfg),
           dxz = weak_distance(x, z, cfg);
    CHECK(dxz <= dxy + dyz + 1e-12);
  }
}

TEST_CASE("singularity verdicts") {
  PiecewiseMeasure a =
      atoms({{rat(1), Rational(1)}, {RealValue(BigFloat::sqrt_of(Rational(2))), Rational(1)}});
  PiecewiseMeasure b = atoms({{rat(2), Rational(1)},
                              {RealValue(BigFloat::sqrt_of(Rational(2)) *
                                         BigFloat::from_rational(Rational(2))),
                               Rational(1)}});
  CHECK(singularity_test(a, b).verdict == SingularityVerdict::singular);

  SingularityReport self = singularity_test(a, a);
  CHECK(self.verdict == SingularityVerdict::common_mass);
  CHECK(self.common == a);

  PiecewiseMeasure c = atoms({{rat(1), Rational(1)}, {rat(2), Rational(1)}});
  PiecewiseMeasure d = atoms({{rat(2), Rational(1)}, {rat(3), Rational(1)}});
  SingularityReport rep = singularity_test(c, d);
  CHECK(rep.verdict == SingularityVerdict::common_mass);
  CHECK(rep.common == atoms({{rat(2), Rational(1)}}));

  // numeric near-collision without exact equality is inconclusive
  PiecewiseMeasure e = atoms({{RealValue(BigFloat::from_double(1.0)), Rational(1)}});
  PiecewiseMeasure f = atoms({{RealValue(BigFloat::from_double(1.0 + 1e-12)), Rational(1)}});
  CHECK(singularity_test(e, f).verdict == SingularityVerdict::inconclusive);

  // atomic vs density never shares mass
  CHECK(singularity_test(atoms({{rat(1, 2), Rational(1)}}), uniform(0, 1, 1.0)).verdict ==
        SingularityVerdict::singular);
  CHECK(singularity_test(uniform(0, 1, 1.0), uniform(0.5, 1.5, 2.0)).verdict ==
        SingularityVerdict::common_mass);
  CHECK(singularity_test(uniform(0, 1, 1.0), uniform(1, 2, 1.0)).verdict ==
        SingularityVerdict::singular);
}

TEST_CASE("absolute continuity and equivalence") {
  BigFloat r2 = BigFloat::sqrt_of(Rational(2));
  PiecewiseMeasure sigma = atoms({{RealValue(BigFloat::from_rational(Rational(1))), Rational(1)}});
  PiecewiseMeasure sigma_s = scale_measure(sigma, RealValue(r2));
  PiecewiseMeasure eta = mix({sigma, sigma_s}, {Rational(1, 2), Rational(1, 2)});
  CHECK(abs_continuity_test(sigma_s, eta));
  CHECK(abs_continuity_test(sigma, sigma));
  CHECK(!abs_continuity_test(atoms({{rat(1), Rational(1)}}), atoms({{rat(2), Rational(1)}})));

  PiecewiseMeasure doubled = atoms({{rat(1), Rational(2)}, {rat(2), Rational(2)}});
  PiecewiseMeasure single = atoms({{rat(1), Rational(1)}, {rat(2), Rational(1)}});
  CHECK(equivalence_test(doubled, single));  // weights are ignored
  CHECK(!equivalence_test(atoms({{rat(1), Rational(1)}}), single));

  PiecewiseMeasure tilde = symmetrize(atoms({{rat(1), Rational(1)}, {rat(3), Rational(1)}}));
  CHECK(equivalence_test(tilde, scale_measure(tilde, rat(-1))));
}

TEST_CASE("singularity and absolute continuity cohere") {
  CounterRng rng(57);
  for (int i = 0; i < 100; ++i) {
    CounterRng r1(rng.next_u64()), r2(rng.next_u64());
    PiecewiseMeasure a = random_numeric_measure(r1);
    PiecewiseMeasure b = random_numeric_measure(r2);
    if (singularity_test(a, b).verdict == SingularityVerdict::singular) {
      CHECK(!abs_continuity_test(a, b));
    }
  }
}

TEST_CASE("self similarity scales") {
  AtomicMeasure m1 = AtomicMeasure::from_atoms(
      {{rat(1), Rational(1)}, {rat(2), Rational(1)}, {rat(4), Rational(1)}});
  std::vector<RealValue> s1 = self_similarity_scales(m1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0] == rat(1));

  AtomicMeasure m2 = AtomicMeasure::from_atoms({{rat(-1), Rational(1)}, {rat(1), Rational(1)}});
  std::vector<RealValue> s2 = self_similarity_scales(m2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == rat(-1));
  CHECK(s2[1] == rat(1));

  AtomicMeasure m3 = AtomicMeasure::from_atoms(
      {{rat(-2), Rational(1)}, {rat(-1, 2), Rational(1)}, {rat(1), Rational(1)}});
  std::vector<RealValue> s3 = self_similarity_scales(m3);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0] == rat(1));

  CHECK_THROWS(self_similarity_scales(
      AtomicMeasure::from_atoms({{rat(0), Rational(1)}, {rat(1), Rational(1)}})));
}

TEST_CASE("self similarity group structure: contains 1, closed under inverse") {
  // symmetric geometric support {1,2,4} u {-1,-2,-4}: scale -1 works, 2 does not
  std::vector<Atom> a;
  for (long v : {1L, 2L, 4L}) {
    a.push_back({rat(v), Rational(1)});
    a.push_back({rat(-v), Rational(1)});
  }
  std::vector<RealValue> s = self_similarity_scales(AtomicMeasure::from_atoms(std::move(a)));
  bool has_one = false;
  for (const auto& v : s) {
    if (v == rat(1)) has_one = true;
    // closure under inverse within the returned set
    auto q = v.as_rational();
    REQUIRE(q.has_value());
    bool found_inv = false;
    for (const auto& w : s) {
      if (w == RealValue(q->inverse())) found_inv = true;
    }
    CHECK(found_inv);
  }
  CHECK(has_one);
}

TEST_CASE("pushforward algebra on random measures") {
  CounterRng rng(91);
  for (int i = 0; i < 40; ++i) {
    CounterRng r1(rng.next_u64());
    PiecewiseMeasure m = random_numeric_measure(r1);
    double s = 0.25 + rng.next_uniform() * 3, r = rng.next_uniform() * 4 - 2;
    RealValue sv(BigFloat::from_double(s, 128)), rv(BigFloat::from_double(r, 128));

    PiecewiseMeasure left = scale_measure(scale_measure(m, sv), rv);
    PiecewiseMeasure right = scale_measure(m, sv * rv);
    REQUIRE(left.atomic().size() == right.atomic().size());
    for (size_t k = 0; k < left.atomic().size(); ++k) {
      CHECK(left.atomic().atoms()[k].position.to_double_approx() ==
            doctest::Approx(right.atomic().atoms()[k].position.to_double_approx()).epsilon(1e-13));
    }
    CHECK(scale_measure(m, rat(1)) == m);
    CHECK(translate_measure(translate_measure(m, rv), sv) ==
          translate_measure(m, rv + sv));
    CHECK(scale_measure(m, sv).atomic().mass() == m.atomic().mass());
    PiecewiseMeasure sym = symmetrize(m);
    CHECK(sym.atomic().mass() == m.atomic().mass() * Rational(2));
  }
}

TEST_CASE("bochner covariance and bounds on random measures") {
  CounterRng rng(101);
  for (int i = 0; i < 30; ++i) {
    CounterRng r1(rng.next_u64());
    PiecewiseMeasure m = random_numeric_measure(r1);
    double s = 0.5 + rng.next_uniform() * 2, r = rng.next_uniform() - 0.5;
    for (double t : {0.0, 0.3, 1.7}) {
      std::complex<double> a = bochner(scale_measure(m, RealValue(BigFloat::from_double(s))), t);
      std::complex<double> b = bochner(m, s * t);
      CHECK(std::abs(a - b) < 1e-12);
      std::complex<double> c = bochner(translate_measure(m, RealValue(BigFloat::from_double(r))), t);
      std::complex<double> rot(std::cos(2 * M_PI * t * r), std::sin(2 * M_PI * t * r));
      CHECK(std::abs(c - rot * bochner(m, t)) < 1e-12);
      CHECK(std::abs(bochner(m, t)) <= m.total_mass() + 1e-12);
      CHECK(std::fabs(bochner(symmetrize(m), t).imag()) < 1e-12);
    }
    CHECK(std::abs(bochner(m, 0.0)) == doctest::Approx(m.total_mass()));
  }
}

TEST_CASE("atomic measure invariants") {
  CHECK_THROWS(AtomicMeasure::from_atoms({{rat(1), Rational(0)}}));
  CHECK_THROWS(AtomicMeasure::from_atoms({{rat(1), Rational(-1)}}));
  // exact duplicates merge
  AtomicMeasure m = AtomicMeasure::from_atoms({{rat(1), Rational(1)}, {rat(1), Rational(2)}});
  REQUIRE(m.size() == 1);
  CHECK(m.atoms()[0].weight == Rational(3));
  // near-collision in the numeric tier refuses construction
  CHECK_THROWS(AtomicMeasure::from_atoms(
      {{RealValue(BigFloat::from_double(1.0)), Rational(1)},
       {RealValue(BigFloat::from_double(1.0 + 1e-13)), Rational(1)}}));
  // genuinely symbolic and numeric positions cannot share a measure
  CHECK_THROWS(AtomicMeasure::from_atoms(
      {{RealValue(SymbolicReal::symbol("tau")), Rational(1)},
       {RealValue(BigFloat::from_double(1.0)), Rational(1)}}));
}
