#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bethe/rat.hpp"

namespace bethe {

/// Dense univariate polynomial over Q; coefficient i multiplies x^i.
/// The coefficient vector never has a trailing zero, so the zero
/// polynomial is the empty vector.
class Poly {
 public:
  Poly() = default;
  Poly(const Rat& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<Rat> coeffs);
  Poly(std::initializer_list<Rat> coeffs) : Poly(std::vector<Rat>(coeffs)) {}

  static Poly x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }
  static Poly monomial(const Rat& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const;
  const Rat& lc() const;

  Poly derivative() const;
  /// The antiderivative with constant term `c`.
  Poly antiderivative(const Rat& c = Rat(0)) const;
  Rat eval(const Rat& at) const;
  /// p(f(x)).
  Poly compose(const Poly& f) const;
  /// Coefficient of (x-s)^k in the Taylor expansion about s, as a polynomial
  /// in s: p^{(k)}/k!.
  Poly taylor_coeff(int k) const;
  Poly monic() const;
  /// Positive rational c with p/c an integer polynomial with gcd 1.
  Rat content() const;
  Poly primitive() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Euclidean division; throws std::domain_error when b is zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly rem(const Poly& a, const Poly& b);
/// a / b, throwing InexactDivision when the remainder is non-zero.
Poly exact_div(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b).
struct ExtGcd {
  Poly g, s, t;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);

Poly pow(const Poly& p, int n);
/// Monic product of the distinct irreducible factors.
Poly squarefree_part(const Poly& p);
/// Yun decomposition: p = lc * prod factors[k]^(k+1) with pairwise coprime
/// squarefree monic factors (possibly 1).
std::vector<Poly> squarefree_decomposition(const Poly& p);
bool is_squarefree(const Poly& p);

/// Canonical text form, e.g. "3/2*x^4 - x + 5".
std::string to_string(const Poly& p);
std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace bethe
