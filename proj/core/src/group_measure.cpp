#include "kronlab/group_measure.hpp"

#include <sstream>
#include <stdexcept>

namespace kronlab {

namespace {

std::string word_str(const std::vector<int>& w) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

}  // namespace

AtomicMeasure realize(const GroupMeasure& gm) {
  if (gm.base.empty()) throw std::invalid_argument("realize: empty base measure");
  if (!(gm.lambda > Rational(0) && gm.lambda < Rational(1))) {
    throw std::invalid_argument("realize: lambda must satisfy 0 < lambda < 1");
  }
  GroupSlice slice = expand_group(gm.generators, gm.truncation_radius);

  Rational weight_sum(0);
  std::vector<Rational> word_weights;
  word_weights.reserve(slice.elements.size());
  for (const auto& e : slice.elements) {
    int len = 0;
    for (int x : e.word) len += std::abs(x);
    Rational w = gm.lambda.pow(len);
    word_weights.push_back(w);
    weight_sum += w;
  }

  struct Placed {
    RealValue position;
    std::vector<int> word;
  };
  std::vector<Placed> placed;
  std::vector<Atom> atoms;
  for (size_t i = 0; i < slice.elements.size(); ++i) {
    Rational a_h = word_weights[i] / weight_sum;
    for (const auto& b : gm.base.atoms()) {
      RealValue pos = slice.elements[i].value * b.position;
      for (const auto& p : placed) {
        if (positions_match(p.position, pos)) {
          throw std::runtime_error("realize: position collision between words " +
                                   word_str(p.word) + " and " + word_str(slice.elements[i].word));
        }
      }
      placed.push_back({pos, slice.elements[i].word});
      atoms.push_back({pos, a_h * b.weight});
    }
  }
  return AtomicMeasure::from_atoms(std::move(atoms));
}

StructuralVerdict structural_self_similarity(const GroupMeasure& gm, const RealValue& s) {
  if (s.is_zero()) throw std::invalid_argument("structural_self_similarity: s = 0");
  GroupSlice slice = expand_group(gm.generators, gm.truncation_radius);

  StructuralVerdict v;
  const RealValue neg = -s;
  for (const auto& e : slice.elements) {
    if (e.value == s || positions_match(e.value, s)) {
      v.member_of_group = true;
      v.word = e.word;
      v.negated = false;
      break;
    }
    if (e.value == neg || positions_match(e.value, neg)) {
      v.member_of_group = true;
      v.word = e.word;
      v.negated = true;
      break;
    }
  }

  AtomicMeasure sigma = realize(gm);
  bool has_symbols = false;
  for (const auto& a : sigma.atoms()) {
    if (a.position.is_symbolic() && !a.position.sym().is_rational()) has_symbols = true;
  }
  long count = 0;
  if (has_symbols && s.is_numeric()) {
    // s * (symbolic support) leaves the symbolic tier; by declared
    // independence of the basis symbols no collision is possible
    count = 0;
  } else {
    PiecewiseMeasure scaled = scale_measure(PiecewiseMeasure(sigma), s);
    for (const auto& a : scaled.atomic().atoms()) {
      for (const auto& b : sigma.atoms()) {
        if (positions_match(a.position, b.position)) {
          ++count;
          break;
        }
      }
    }
  }
  v.collision_count = count;
  v.support_size = static_cast<long>(sigma.size());
  v.overlap_fraction = Rational(count, static_cast<long>(sigma.size()));
  return v;
}

}  // namespace kronlab
