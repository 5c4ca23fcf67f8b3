#pragma once

#include <ostream>
#include <string>

#include "bethe/poly.hpp"

namespace bethe {

/// Reduced quotient num/den over Q with den monic.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Poly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rat& c) : num_(c), den_(1) {}   // NOLINT(google-explicit-constructor)
  RationalFunction(long c) : num_(c), den_(1) {}         // NOLINT(google-explicit-constructor)
  /// Normalizes; throws std::domain_error when den is zero.
  RationalFunction(const Poly& num, const Poly& den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RationalFunction derivative() const;
  RationalFunction inverse() const;
  /// Value at a rational point; throws std::domain_error at a pole.
  Rat eval(const Rat& at) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

 private:
  void normalize_lc();

  Poly num_;
  Poly den_;
};

/// f'/f.
RationalFunction log_derivative(const Poly& f);
RationalFunction log_derivative(const RationalFunction& f);

/// "num" when the denominator is 1, otherwise "(num)/(den)".
std::string to_string(const RationalFunction& r);
std::ostream& operator<<(std::ostream& os, const RationalFunction& r);

}  // namespace bethe
