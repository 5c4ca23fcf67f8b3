#pragma once

#include <memory>
#include <vector>

#include "bethe/quotient.hpp"
#include "bethe/ratfunc.hpp"

namespace bethe {

/// Coefficients a_{-2}, ..., a_N of a rational function about a symbolic
/// root s of a squarefree modulus. The slice holds at every root of the
/// modulus at once.
struct LaurentSlice {
  std::shared_ptr<const Poly> modulus;
  int order = 0;
  std::vector<QElem> coeffs;  // coeffs[j + 2] = a_j

  QElem center() const { return QElem::generator(modulus); }
  /// a_j; zero outside [-2, order].
  QElem at(int j) const;
  /// Order of the pole (0, 1 or 2) as seen from the slice.
  int pole_order() const;
};

/// Expansion of r about the class of t modulo `modulus`, up to (x-s)^order.
/// Throws PoleTooHigh for a pole of order > 2 and SplitRequired when the
/// vanishing order of the denominator differs between roots of the modulus.
LaurentSlice laurent_expand(const RationalFunction& r, std::shared_ptr<const Poly> modulus, int order);

/// Rational center s (modulus x - s).
LaurentSlice laurent_expand(const RationalFunction& r, const Rat& s, int order);

}  // namespace bethe
