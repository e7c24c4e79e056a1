#pragma once

#include <string>
#include <vector>

#include "kronlab/measure.hpp"
#include "kronlab/qindep.hpp"

namespace kronlab {

/// Structured measure sum_{h in H} a_h (R_h)_* nu over the word ball of a
/// finitely generated multiplicative group, with geometric weights
/// proportional to lambda^{|word|} (0 < lambda < 1 certifies summability
/// over the full group; the realization renormalizes over the truncation).
struct GroupMeasure {
  std::vector<RealValue> generators;
  AtomicMeasure base;  // nu
  Rational lambda = Rational(1, 2);
  int truncation_radius = 0;
};

/// Realizes the truncation as an atomic measure. Throws when two (word,
/// base-atom) pairs land on the same position, listing the colliding words.
AtomicMeasure realize(const GroupMeasure& gm);

/// Self-similarity verdict for a scale s against the group structure:
/// member_of_group when s (or -s) equals a word value in the slice, plus
/// collision statistics of support(sigma_s) against support(sigma) on the
/// realized truncation.
struct StructuralVerdict {
  bool member_of_group = false;
  std::vector<int> word;  // matching word when member_of_group
  bool negated = false;   // matched -s rather than s
  long collision_count = 0;
  long support_size = 0;
  Rational overlap_fraction = Rational(0);
};

StructuralVerdict structural_self_similarity(const GroupMeasure& gm, const RealValue& s);

}  // namespace kronlab
