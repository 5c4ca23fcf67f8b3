#include "bethe/quotient.hpp"

#include <stdexcept>

#include "bethe/linsolve.hpp"

namespace bethe {

namespace {

const std::shared_ptr<const Poly>& common(const QElem& a, const QElem& b) {
  if (!a.modulus()) return b.modulus();
  if (!b.modulus() || a.modulus() == b.modulus() || *a.modulus() == *b.modulus()) {
    return a.modulus();
  }
  throw std::logic_error("quotient-ring elements with different moduli");
}

Poly reduce(const std::shared_ptr<const Poly>& m, const Poly& v) {
  if (!m || v.degree() < m->degree()) return v;
  return rem(v, *m);
}

}  // namespace

std::shared_ptr<const Poly> make_modulus(const Poly& q) {
  if (q.degree() < 1) throw std::domain_error("quotient-ring modulus must be nonconstant");
  return std::make_shared<const Poly>(q.monic());
}

QElem::QElem(std::shared_ptr<const Poly> modulus, const Poly& value)
    : mod_(std::move(modulus)), value_(reduce(mod_, value)) {}

QElem QElem::generator(std::shared_ptr<const Poly> modulus) {
  return QElem(std::move(modulus), Poly::x());
}

QElem QElem::lift(std::shared_ptr<const Poly> modulus, const Poly& p) {
  return QElem(std::move(modulus), p);
}

void QElem::require_unit() const {
  if (value_.is_zero()) throw std::domain_error("division by zero in quotient ring");
  if (!mod_ || value_.degree() == 0) return;
  Poly g = gcd(value_, *mod_);
  if (g.degree() > 0) throw SplitRequired(g);
}

// Solves value * s = 1 mod q as a linear system in the coefficients of s;
// Euclid over Q swells coefficients badly for moduli of high degree.
QElem QElem::inverse() const {
  require_unit();
  if (!mod_ || value_.degree() == 0) return QElem(mod_, Poly(1 / value_.lc()));
  const auto n = static_cast<std::size_t>(mod_->degree());
  Matrix<Rat> a(n, n);
  Poly col = value_;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) a(r, c) = col.coeff(static_cast<int>(r));
    col = reduce(mod_, col * Poly::x());
  }
  std::vector<Rat> rhs(n, Rat(0));
  rhs[0] = 1;
  auto sol = linear_solve(a, rhs);
  if (!sol.consistent()) throw std::logic_error("unit without inverse in quotient ring");
  return QElem(mod_, Poly(std::move(*sol.particular)));
}

QElem operator+(const QElem& a, const QElem& b) {
  const auto& m = common(a, b);
  return QElem(m, a.value_ + b.value_);
}

QElem operator-(const QElem& a, const QElem& b) {
  const auto& m = common(a, b);
  return QElem(m, a.value_ - b.value_);
}

QElem operator*(const QElem& a, const QElem& b) {
  const auto& m = common(a, b);
  return QElem(m, a.value_ * b.value_);
}

QElem operator-(const QElem& a) {
  QElem r = a;
  r.value_ = -r.value_;
  return r;
}

std::string to_string(const QElem& e) {
  if (e.is_rational()) return e.rational_value().get_str();
  return "[" + to_string(e.value()) + " mod " + to_string(*e.modulus()) + "]";
}

}  // namespace bethe
