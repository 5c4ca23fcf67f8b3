#pragma once

#include <string_view>

#include "bethe/poly.hpp"
#include "bethe/ratfunc.hpp"

namespace bethe {

/// Grammar: rational literals, the variable x, + - * / ^ and parentheses.
/// Whitespace is ignored; ^ takes an optionally signed integer exponent.
/// Throws SyntaxError (with character offset) on malformed input.
RationalFunction parse_ratfunc(std::string_view text);

/// As parse_ratfunc, but throws NonPolynomial unless the result is a polynomial.
Poly parse_poly(std::string_view text);

}  // namespace bethe
