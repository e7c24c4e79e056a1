#pragma once

#include <cmath>
#include <complex>

#include "kronlab/bigfloat.hpp"

namespace kronlab {

/// Point on the unit circle represented by its argument in turns, so that
/// powers are exact angle multiplications and chord distances reduce to
/// 2|sin(pi * d)| with d the wrapped angle difference.
struct UnitComplex {
  double turns = 0;

  static UnitComplex from_turns(double t) { return {t}; }

  UnitComplex pow(long n) const { return {turns * static_cast<double>(n)}; }

  double chord_to(const UnitComplex& o) const { return chord_of_turns(turns - o.turns); }

  std::complex<double> value() const {
    return {std::cos(2.0 * M_PI * turns), std::sin(2.0 * M_PI * turns)};
  }
};

}  // namespace kronlab
