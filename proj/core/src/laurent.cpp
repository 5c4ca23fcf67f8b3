#include "bethe/laurent.hpp"

#include <string>

#include "bethe/errors.hpp"

namespace bethe {

QElem LaurentSlice::at(int j) const {
  if (j < -2 || j > order) return QElem(modulus, Poly());
  return coeffs[static_cast<std::size_t>(j + 2)];
}

int LaurentSlice::pole_order() const {
  if (!at(-2).is_zero()) return 2;
  if (!at(-1).is_zero()) return 1;
  return 0;
}

LaurentSlice laurent_expand(const RationalFunction& r, std::shared_ptr<const Poly> modulus, int order) {
  const Poly& num = r.num();
  const Poly& den = r.den();

  int v = 0;
  for (;; ++v) {
    QElem dv = QElem::lift(modulus, den.taylor_coeff(v));
    if (dv.is_zero()) continue;
    dv.require_unit();  // a zero divisor here means the order varies over roots
    break;
  }
  if (v > 2) {
    throw PoleTooHigh("pole of order " + std::to_string(v) + " at roots of " + to_string(*modulus));
  }

  const int terms = order + v + 1;  // h^0 .. h^{order+v} of num/(den/h^v)
  LaurentSlice out;
  out.modulus = modulus;
  out.order = order;
  out.coeffs.assign(static_cast<std::size_t>(order + 3), QElem(modulus, Poly()));
  if (terms <= 0) return out;

  std::vector<QElem> e(static_cast<std::size_t>(terms));
  std::vector<QElem> n(static_cast<std::size_t>(terms));
  for (int i = 0; i < terms; ++i) {
    e[static_cast<std::size_t>(i)] = QElem::lift(modulus, den.taylor_coeff(i + v));
    n[static_cast<std::size_t>(i)] = QElem::lift(modulus, num.taylor_coeff(i));
  }
  const QElem inv_e0 = e[0].inverse();
  std::vector<QElem> q(static_cast<std::size_t>(terms));
  for (int i = 0; i < terms; ++i) {
    QElem acc = n[static_cast<std::size_t>(i)];
    for (int j = 1; j <= i; ++j) {
      acc -= e[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(i - j)];
    }
    q[static_cast<std::size_t>(i)] = acc * inv_e0;
  }
  for (int j = -v; j <= order; ++j) {
    out.coeffs[static_cast<std::size_t>(j + 2)] = q[static_cast<std::size_t>(j + v)];
  }
  return out;
}

LaurentSlice laurent_expand(const RationalFunction& r, const Rat& s, int order) {
  return laurent_expand(r, make_modulus(Poly::x() - Poly(s)), order);
}

}  // namespace bethe
