#include <doctest.h>

#include "kronlab/group_measure.hpp"

using namespace kronlab;

namespace {

RealValue rat(long n, long d = 1) { return RealValue(Rational(n, d)); }

}  // namespace

TEST_CASE("realize geometric weights over a cyclic symbolic group") {
  GroupMeasure gm;
  gm.generators = {RealValue(SymbolicReal::symbol("tau"))};
  gm.base = AtomicMeasure::from_atoms({{rat(1), Rational(1)}});
  gm.lambda = Rational(1, 2);
  gm.truncation_radius = 1;
  AtomicMeasure m = realize(gm);
  REQUIRE(m.size() == 3);
  // weights proportional to (1/2, 1, 1/2), renormalized
  Rational total(0);
  for (const auto& a : m.atoms()) total += a.weight;
  CHECK(total == Rational(1));
  for (const auto& a : m.atoms()) {
    if (a.position == rat(1)) {
      CHECK(a.weight == Rational(1, 2));
    } else {
      CHECK(a.weight == Rational(1, 4));
    }
  }
}

TEST_CASE("realize radius 0 returns the base") {
  GroupMeasure gm;
  gm.generators = {RealValue(SymbolicReal::symbol("tau"))};
  gm.base = AtomicMeasure::from_atoms({{rat(1), Rational(2, 3)}, {rat(3), Rational(1, 3)}});
  gm.truncation_radius = 0;
  CHECK(realize(gm) == gm.base);
}

TEST_CASE("realize rational group places atoms on the orbit") {
  GroupMeasure gm;
  gm.generators = {rat(2)};
  gm.base = AtomicMeasure::from_atoms({{rat(1), Rational(1)}});
  gm.truncation_radius = 2;
  AtomicMeasure m = realize(gm);
  REQUIRE(m.size() == 5);
  std::vector<Rational> positions;
  for (const auto& a : m.atoms()) positions.push_back(*a.position.as_rational());
  CHECK(positions == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1),
                                           Rational(2), Rational(4)});
}

TEST_CASE("realize reports colliding words") {
  GroupMeasure gm;
  gm.generators = {rat(2)};
  gm.base = AtomicMeasure::from_atoms({{rat(1), Rational(1, 2)}, {rat(2), Rational(1, 2)}});
  gm.truncation_radius = 1;
  try {
    realize(gm);
    CHECK(false);
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("collision") != std::string::npos);
    CHECK(msg.find("(") != std::string::npos);  // the words are listed
  }
}

TEST_CASE("structural self-similarity: group words are members") {
  GroupMeasure gm;
  gm.generators = {RealValue(SymbolicReal::symbol("tau"))};
  gm.base = AtomicMeasure::from_atoms({{rat(1), Rational(1)}});
  gm.lambda = Rational(1, 2);
  gm.truncation_radius = 3;

  StructuralVerdict v = structural_self_similarity(gm, RealValue(SymbolicReal::symbol("tau")));
  CHECK(v.member_of_group);
  CHECK(v.word == std::vector<int>{1});
  CHECK(!v.negated);

  StructuralVerdict v2 =
      structural_self_similarity(gm, RealValue(SymbolicReal::symbol("tau").pow(2)));
  CHECK(v2.member_of_group);

  StructuralVerdict vneg = structural_self_similarity(gm, RealValue(-SymbolicReal::symbol("tau")));
  CHECK(vneg.member_of_group);
  CHECK(vneg.negated);
}

TEST_CASE("structural self-similarity: 4 = 2^2 inside the rational group") {
  GroupMeasure gm;
  gm.generators = {rat(2)};
  gm.base = AtomicMeasure::from_atoms({{rat(1), Rational(1)}});
  gm.truncation_radius = 2;
  StructuralVerdict v = structural_self_similarity(gm, rat(4));
  CHECK(v.member_of_group);
  CHECK(v.word == std::vector<int>{2});
}

TEST_CASE("structural self-similarity: rational scale against a symbolic group") {
  GroupMeasure gm;
  gm.generators = {RealValue(SymbolicReal::symbol("tau"))};
  gm.base = AtomicMeasure::from_atoms({{rat(1), Rational(1)}});
  gm.truncation_radius = 4;
  for (long s : {2L, 3L}) {
    StructuralVerdict v = structural_self_similarity(gm, rat(s));
    CHECK(!v.member_of_group);
    CHECK(v.collision_count == 0);
    CHECK(v.support_size == 9);
  }
  CHECK_THROWS(structural_self_similarity(gm, rat(0)));
}

TEST_CASE("numeric detector sees the index shift as overlap 2R/(2R+1)") {
  const int radius = 3;
  GroupMeasure gm;
  gm.generators = {RealValue(BigFloat::pi(128))};
  gm.base = AtomicMeasure::from_atoms({{rat(1), Rational(1)}});
  gm.lambda = Rational(1, 2);
  gm.truncation_radius = radius;
  StructuralVerdict v = structural_self_similarity(gm, RealValue(BigFloat::pi(128)));
  CHECK(v.member_of_group);
  CHECK(v.collision_count == 2 * radius);
  CHECK(v.support_size == 2 * radius + 1);
  CHECK(v.overlap_fraction == Rational(2 * radius, 2 * radius + 1));
}
