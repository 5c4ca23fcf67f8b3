#pragma once

#include <gmpxx.h>

#include <string>

namespace bethe {

/// Arbitrary-precision rational, always kept canonical (reduced, positive
/// denominator) by GMP.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// "a" or "a/b".
inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Parses "a" or "a/b"; throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& text);

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// True when 2r is an integer.
inline bool is_half_integer(const Rat& r) { return r.get_den() == 1 || r.get_den() == 2; }

}  // namespace bethe
