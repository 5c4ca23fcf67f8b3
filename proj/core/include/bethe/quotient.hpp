#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bethe/errors.hpp"
#include "bethe/poly.hpp"

namespace bethe {

/// Raised when an inversion in Q[t]/(q) meets a zero divisor. `factor` is a
/// proper monic factor of q; the caller reruns on factor and q/factor.
class SplitRequired : public Error {
 public:
  explicit SplitRequired(Poly factor)
      : Error("zero divisor met; modulus splits off " + to_string(factor)),
        factor_(std::move(factor)) {}
  const Poly& factor() const { return factor_; }

 private:
  Poly factor_;
};

/// Residue class in Q[t]/(q) with q squarefree and monic, i.e. a value
/// attached simultaneously to every root of q. Computing with the class of t
/// is computing with a symbolic root s of q (dynamic evaluation).
///
/// An element without a modulus is a plain rational constant; it adopts the
/// modulus of whatever it is combined with.
class QElem {
 public:
  QElem() = default;
  QElem(const Rat& c) : value_(c) {}  // NOLINT(google-explicit-constructor)
  QElem(long c) : value_(Rat(c)) {}   // NOLINT(google-explicit-constructor)
  QElem(std::shared_ptr<const Poly> modulus, const Poly& value);

  /// The class of t modulo q.
  static QElem generator(std::shared_ptr<const Poly> modulus);
  /// p(s) for the symbolic root s.
  static QElem lift(std::shared_ptr<const Poly> modulus, const Poly& p);

  const std::shared_ptr<const Poly>& modulus() const { return mod_; }
  const Poly& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_rational() const { return value_.degree() <= 0; }
  Rat rational_value() const { return value_.coeff(0); }

  /// Throws SplitRequired on a zero divisor, std::domain_error on zero.
  QElem inverse() const;
  /// Throws SplitRequired when the element is a zero divisor.
  void require_unit() const;

  friend QElem operator+(const QElem& a, const QElem& b);
  friend QElem operator-(const QElem& a, const QElem& b);
  friend QElem operator*(const QElem& a, const QElem& b);
  friend QElem operator/(const QElem& a, const QElem& b) { return a * b.inverse(); }
  friend QElem operator-(const QElem& a);
  QElem& operator+=(const QElem& o) { return *this = *this + o; }
  QElem& operator-=(const QElem& o) { return *this = *this - o; }
  QElem& operator*=(const QElem& o) { return *this = *this * o; }
  /// Equality of classes (same value modulo the common modulus).
  friend bool operator==(const QElem& a, const QElem& b) { return (a - b).is_zero(); }
  friend bool operator!=(const QElem& a, const QElem& b) { return !(a == b); }

 private:
  std::shared_ptr<const Poly> mod_;
  Poly value_;
};

std::shared_ptr<const Poly> make_modulus(const Poly& q);

/// "v" for a rational, otherwise "[v mod q]" with t printed as x.
std::string to_string(const QElem& e);

/// Runs `f(modulus)` and, on SplitRequired, reruns on both factors until
/// every piece succeeds. Returns (piece modulus, result) pairs whose moduli
/// multiply to q.
template <class F>
auto split_on_demand(const Poly& q, F&& f) {
  using R = decltype(f(std::declval<std::shared_ptr<const Poly>>()));
  std::vector<std::pair<Poly, R>> done;
  std::vector<Poly> work{q.monic()};
  while (!work.empty()) {
    Poly cur = std::move(work.back());
    work.pop_back();
    try {
      done.emplace_back(cur, f(make_modulus(cur)));
    } catch (const SplitRequired& s) {
      Poly a = s.factor();
      work.push_back(exact_div(cur, a));
      work.push_back(std::move(a));
    }
  }
  return done;
}

}  // namespace bethe
