#pragma once

#include <vector>

#include "superperiods/ball.hpp"

namespace superperiods {

struct Precision {
  long target_bits = 128;
  long working_bits = 192;

  static long guard(int genus) { return 64 + 2L * genus; }
  // working = target + scale * guard(genus)
  static Precision for_genus(long target_bits, int genus, int guard_scale = 1) {
    return Precision{target_bits, target_bits + guard_scale * guard(genus)};
  }
  static long bits_from_digits(long digits);
};

struct IsolatedRoots {
  std::vector<Complex> roots;  // disk of radius rad() around each midpoint
  int degree = 0;
};

// Horner evaluation; coefficients ascending (c0 + c1 x + ...).
Complex poly_eval(const std::vector<Complex>& coeffs, const Complex& x);

// Certified isolation of all roots of a polynomial with ball coefficients.
// Roots come back sorted by midpoint (real part, then imaginary part).
// Throws PrecisionError("not separable at this precision") when the
// inclusion disks cannot be separated.
IsolatedRoots poly_roots(const std::vector<Complex>& coeffs, long working_bits);

}  // namespace superperiods
