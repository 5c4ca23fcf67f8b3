#include "bethe/ratfunc.hpp"

#include <stdexcept>

namespace bethe {

RationalFunction::RationalFunction(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Poly g = gcd(num, den);
  num_ = exact_div(num, g);
  den_ = exact_div(den, g);
  Rat s = 1 / den_.lc();
  num_ *= s;
  den_ *= s;
}

void RationalFunction::normalize_lc() {
  if (den_.is_monic()) return;
  Rat s = 1 / den_.lc();
  num_ *= s;
  den_ *= s;
}

RationalFunction RationalFunction::derivative() const {
  return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

RationalFunction RationalFunction::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
  return {den_, num_};
}

Rat RationalFunction::eval(const Rat& at) const {
  Rat d = den_.eval(at);
  if (d == 0) throw std::domain_error("rational function evaluated at a pole");
  return num_.eval(at) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  // Any common factor of the sum and its denominator divides gcd(den_a, den_b).
  Poly g = gcd(a.den_, b.den_);
  Poly ca = exact_div(b.den_, g);
  Poly cb = exact_div(a.den_, g);
  Poly num = a.num_ * ca + b.num_ * cb;
  if (num.is_zero()) return {};
  Poly h = gcd(num, g);
  RationalFunction out;
  out.num_ = exact_div(num, h);
  out.den_ = exact_div(a.den_ * ca, h);
  out.normalize_lc();
  return out;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly g1 = gcd(a.num_, b.den_);
  Poly g2 = gcd(b.num_, a.den_);
  RationalFunction out;
  out.num_ = exact_div(a.num_, g1) * exact_div(b.num_, g2);
  out.den_ = exact_div(a.den_, g2) * exact_div(b.den_, g1);
  out.normalize_lc();
  return out;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  return a * b.inverse();
}

RationalFunction operator-(const RationalFunction& a) {
  RationalFunction r = a;
  r.num_ = -r.num_;
  return r;
}

RationalFunction log_derivative(const Poly& f) { return {f.derivative(), f}; }

RationalFunction log_derivative(const RationalFunction& f) {
  return log_derivative(f.num()) - log_derivative(f.den());
}

std::string to_string(const RationalFunction& r) {
  if (r.is_polynomial()) return to_string(r.num());
  return "(" + to_string(r.num()) + ")/(" + to_string(r.den()) + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << to_string(r); }

}  // namespace bethe
