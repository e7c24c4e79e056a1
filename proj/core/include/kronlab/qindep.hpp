#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kronlab/relation.hpp"
#include "kronlab/symbolic.hpp"

namespace kronlab {

enum class IndependenceStatus { independent_exact, dependent, none_found_within_bounds };

std::string independence_status_name(IndependenceStatus s);

struct SearchBounds {
  mpz_class max_coeff = 10000;
  int precision_bits = kDefaultPrecisionBits;
};

struct IndependenceVerdict {
  IndependenceStatus status;
  std::optional<IntegerRelation> relation;  // present iff dependent
  SearchBounds bounds;

  bool is_dependent() const { return status == IndependenceStatus::dependent; }
};

/// Q-independence test. Symbolic tier: exact rational linear algebra on the
/// monomial coordinate vectors (independent-exact is only reachable here).
/// Numeric tier: delegates to find_integer_relation under the bounds.
/// Mixed tiers in one call throw; callers evaluate symbols first.
IndependenceVerdict check_q_independence(const std::vector<RealValue>& xs,
                                         const SearchBounds& bounds = {});

/// The word ball of a finitely generated multiplicative group: all products
/// prod g_i^{e_i} with sum |e_i| <= radius, deduplicated, identity included.
struct GroupElement {
  std::vector<int> word;  // exponents per generator
  RealValue value;
};

struct GroupSlice {
  std::vector<RealValue> generators;
  int radius = 0;
  std::vector<GroupElement> elements;  // ordered by word length, then lex
  Tier tier = Tier::symbolic;
};

/// Expands the word ball. Generators must be positive (nonzero suffices for
/// the algebra; positivity is required by the group-of-scales contract).
/// In the numeric tier, exactly equal values merge; values that agree within
/// relative 2^{-precision/2} without being equal abort with an error.
GroupSlice expand_group(const std::vector<RealValue>& generators, int radius);

IndependenceVerdict check_group_independence(const GroupSlice& slice,
                                             const SearchBounds& bounds = {});

}  // namespace kronlab
