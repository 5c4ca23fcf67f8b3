#pragma once

#include <span>
#include <vector>

#include "bethe/poly.hpp"

namespace bethe {

/// f g' - f' g.
Poly wronskian2(const Poly& f, const Poly& g);

/// det [ f_c^{(r)} ]_{r,c}; row r holds r-th derivatives. Throws
/// std::invalid_argument on an empty list.
Poly wronskian_n(std::span<const Poly> fs);

/// Determinant of a square polynomial matrix by fraction-free elimination.
Poly determinant(std::vector<std::vector<Poly>> m);

}  // namespace bethe
