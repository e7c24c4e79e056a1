#include <doctest.h>

#include <algorithm>
#include <set>

#include "kronlab/qindep.hpp"

using namespace kronlab;

namespace {

RealValue rat(long n, long d = 1) { return RealValue(Rational(n, d)); }
RealValue sym(const std::string& name) { return RealValue(SymbolicReal::symbol(name)); }

}  // namespace

TEST_CASE("distinct monomials are independent-exact") {
  std::vector<RealValue> xs{rat(1), sym("tau"), RealValue(SymbolicReal::symbol("tau").pow(2))};
  IndependenceVerdict v = check_q_independence(xs);
  CHECK(v.status == IndependenceStatus::independent_exact);
  CHECK(!v.relation.has_value());
}

TEST_CASE("rational dependence is found exactly") {
  IndependenceVerdict v = check_q_independence({rat(2), rat(4)});
  REQUIRE(v.status == IndependenceStatus::dependent);
  REQUIRE(v.relation.has_value());
  CHECK(v.relation->coefficients == std::vector<mpz_class>{2, -1});
  CHECK(v.relation->residual.is_zero());
}

TEST_CASE("radical set is none-found within bounds in the numeric tier") {
  const int p = 192;
  std::vector<RealValue> xs{RealValue(BigFloat::from_rational(Rational(1), p)),
                            RealValue(BigFloat::sqrt_of(Rational(2), p)),
                            RealValue(BigFloat::sqrt_of(Rational(3), p)),
                            RealValue(BigFloat::sqrt_of(Rational(6), p))};
  SearchBounds bounds;
  bounds.max_coeff = 10000;
  bounds.precision_bits = 128;
  IndependenceVerdict v = check_q_independence(xs, bounds);
  CHECK(v.status == IndependenceStatus::none_found_within_bounds);
}

TEST_CASE("mixed tiers are rejected") {
  std::vector<RealValue> xs{sym("tau"), RealValue(BigFloat::pi())};
  CHECK_THROWS_AS(check_q_independence(xs), std::invalid_argument);
}

TEST_CASE("preconditions: duplicates and zeros") {
  CHECK_THROWS(check_q_independence({rat(2), rat(2)}));
  CHECK_THROWS(check_q_independence({rat(0), rat(2)}));
}

TEST_CASE("expand_group word balls") {
  GroupSlice two = expand_group({rat(2)}, 2);
  REQUIRE(two.elements.size() == 5);
  std::vector<Rational> values;
  for (const auto& e : two.elements) values.push_back(*e.value.as_rational());
  std::sort(values.begin(), values.end());
  CHECK(values == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1), Rational(2),
                                        Rational(4)});

  GroupSlice tau = expand_group({sym("tau")}, 1);
  REQUIRE(tau.elements.size() == 3);
  CHECK(tau.elements[0].word == std::vector<int>{0});  // identity first
  CHECK(tau.elements[0].value == rat(1));

  // two generators, radius 2: 13 distinct elements by hand enumeration
  GroupSlice both = expand_group({rat(2), rat(3)}, 2);
  CHECK(both.elements.size() == 13);
  std::vector<Rational> vals;
  for (const auto& e : both.elements) vals.push_back(*e.value.as_rational());
  std::sort(vals.begin(), vals.end());
  std::vector<Rational> expect{Rational(1, 9), Rational(1, 6), Rational(1, 4), Rational(1, 3),
                               Rational(1, 2), Rational(2, 3), Rational(1),    Rational(3, 2),
                               Rational(2),    Rational(3),    Rational(4),    Rational(6),
                               Rational(9)};
  CHECK(vals == expect);
}

TEST_CASE("expand_group over two symbols produces mixed monomials") {
  GroupSlice s = expand_group({sym("tau"), sym("h")}, 2);
  CHECK(s.elements.size() == 13);
  bool found_cross = false;
  for (const auto& e : s.elements) {
    if (e.word == std::vector<int>{1, -1}) {
      CHECK(e.value.sym() ==
            SymbolicReal::term(Rational(1),
                               Monomial::symbol("tau") * Monomial::symbol("h", -1)));
      found_cross = true;
    }
  }
  CHECK(found_cross);
  CHECK(check_group_independence(s).status == IndependenceStatus::independent_exact);
}

TEST_CASE("expand_group rejects bad generators and merges exact duplicates") {
  CHECK_THROWS(expand_group({rat(-2)}, 1));
  CHECK_THROWS(expand_group({rat(0)}, 1));
  // 4 = 2^2 collapses exactly
  GroupSlice g = expand_group({rat(2), rat(4)}, 2);
  std::set<Rational> distinct;
  for (const auto& e : g.elements) distinct.insert(*e.value.as_rational());
  CHECK(distinct.size() == g.elements.size());
}

TEST_CASE("numeric near-collision aborts instead of merging") {
  const int p = 128;
  BigFloat a = BigFloat::from_rational(Rational(2), p);
  BigFloat b = BigFloat::from_rational(Rational(2), p) +
               BigFloat::from_double(1e-25, p);  // within 2^{-64} relative of 2
  CHECK_THROWS_AS(expand_group({RealValue(a), RealValue(b)}, 1), std::runtime_error);
}

TEST_CASE("group slice independence verdicts") {
  CHECK(check_group_independence(expand_group({rat(2)}, 2)).status ==
        IndependenceStatus::dependent);
  CHECK(check_group_independence(expand_group({sym("tau")}, 3)).status ==
        IndependenceStatus::independent_exact);

  GroupSlice r2 = expand_group({RealValue(BigFloat::sqrt_of(Rational(2), 192))}, 2);
  SearchBounds bounds;
  bounds.precision_bits = 128;
  IndependenceVerdict v = check_group_independence(r2, bounds);
  REQUIRE(v.status == IndependenceStatus::dependent);
  REQUIRE(v.relation.has_value());
  // the relation lives inside {1/2, 1, 2} or inside {1/sqrt2, sqrt2}
  // element order: 1, 1/sqrt2, sqrt2, 1/2, 2
  const auto& k = v.relation->coefficients;
  bool rational_side = k[1] == 0 && k[2] == 0;
  bool radical_side = k[0] == 0 && k[3] == 0 && k[4] == 0;
  CHECK((rational_side || radical_side));
  CHECK(v.relation->residual.to_double() < 1e-15);
}

TEST_CASE("scale covariance of dependence") {
  IndependenceVerdict base = check_q_independence({rat(2), rat(4)});
  for (long c : {3L, -5L, 7L}) {
    IndependenceVerdict scaled =
        check_q_independence({rat(2 * c), rat(4 * c)});
    REQUIRE(scaled.status == IndependenceStatus::dependent);
    CHECK(scaled.relation->coefficients == base.relation->coefficients);
  }
}

TEST_CASE("group-slice monotonicity of dependence in the radius") {
  for (int radius = 2; radius <= 4; ++radius) {
    CHECK(check_group_independence(expand_group({rat(2)}, radius)).status ==
          IndependenceStatus::dependent);
  }
}

TEST_CASE("subsets of independent-exact sets stay independent-exact") {
  GroupSlice s = expand_group({sym("tau")}, 3);
  std::vector<RealValue> all;
  for (const auto& e : s.elements) all.push_back(e.value);
  for (size_t skip = 0; skip < all.size(); ++skip) {
    std::vector<RealValue> subset;
    for (size_t i = 0; i < all.size(); ++i) {
      if (i != skip) subset.push_back(all[i]);
    }
    CHECK(check_q_independence(subset).status == IndependenceStatus::independent_exact);
  }
}
