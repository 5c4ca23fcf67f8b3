#pragma once

#include <complex>
#include <vector>

#include "bethe/poly.hpp"

namespace bethe {

using Complex = std::complex<double>;

/// All deg(p) roots by Aberth-Ehrlich simultaneous iteration in double
/// precision. Each root r satisfies |p(r)| / (|lc|(1+|r|)^deg) <= tol.
/// Numeric oracle only; nothing exact is derived from it.
/// Throws NonConvergence when the iteration budget runs out.
std::vector<Complex> roots_numeric(const Poly& p, double tol = 1e-12, int max_iter = 2000);

Complex eval_complex(const Poly& p, Complex at);

/// The scaled residual used as the acceptance test of roots_numeric.
double scaled_residual(const Poly& p, Complex at);

}  // namespace bethe
