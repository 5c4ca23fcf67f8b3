#pragma once

#include <span>
#include <vector>

#include "bethe/poly.hpp"

namespace bethe {

/// Pairwise coprime, squarefree, monic polynomials such that every root of
/// every input lies on exactly one of them and, along each one, every input
/// has a constant multiplicity.
std::vector<Poly> coprime_base(std::span<const Poly> polys);

/// Multiplicity of f at the roots of the squarefree q; q must be a piece of
/// a coprime base refining f, so the multiplicity is the same at each root.
int multiplicity(const Poly& f, const Poly& q);

/// Splits a squarefree polynomial into linear factors x - r for the rational
/// roots it can certify, plus the remaining factor (omitted if constant).
/// Candidates come from a numeric root approximation and are verified
/// exactly, so a missed root only leaves it inside the remainder.
std::vector<Poly> split_rational_roots(const Poly& q);

/// Rational root of a linear monic polynomial x - r.
Rat linear_root(const Poly& linear);

}  // namespace bethe
