#include "bethe/classes.hpp"

#include <cmath>
#include <stdexcept>

#include "bethe/errors.hpp"
#include "bethe/roots.hpp"

namespace bethe {

std::vector<Poly> coprime_base(std::span<const Poly> polys) {
  std::vector<Poly> base;
  auto insert = [&base](Poly f) {
    for (std::size_t i = 0; i < base.size() && f.degree() > 0; ++i) {
      Poly g = gcd(f, base[i]);
      if (g.degree() <= 0) continue;
      Poly rest = exact_div(base[i], g);
      f = exact_div(f, g).monic();
      base[i] = g;
      if (rest.degree() > 0) base.push_back(rest.monic());
    }
    if (f.degree() > 0) base.push_back(f.monic());
  };
  for (const auto& p : polys) {
    if (p.degree() <= 0) continue;
    for (const auto& factor : squarefree_decomposition(p)) {
      if (factor.degree() > 0) insert(factor);
    }
  }
  return base;
}

int multiplicity(const Poly& f, const Poly& q) {
  if (f.is_zero()) throw std::domain_error("multiplicity in the zero polynomial");
  int k = 0;
  Poly rest = f;
  for (;;) {
    auto [quot, r] = divmod(rest, q);
    if (!r.is_zero()) break;
    rest = std::move(quot);
    ++k;
  }
  return k;
}

namespace {

/// Best rational approximation of v with denominator <= max_den.
Rat approximate(double v, long max_den) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    if (std::abs(a) > 1e15) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0;
    long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = x - a;
    if (frac < 1e-13) break;
    x = 1.0 / frac;
  }
  if (k1 == 0) return Rat(0);
  return make_rat(h1, k1);
}

}  // namespace

std::vector<Poly> split_rational_roots(const Poly& q) {
  std::vector<Poly> out;
  if (q.degree() <= 0) return out;
  Poly rest = q.monic();
  if (rest.degree() == 1) return {rest};
  std::vector<Complex> approx;
  try {
    approx = roots_numeric(rest, 1e-10);
  } catch (const NonConvergence&) {
    return {rest};
  }
  for (const auto& z : approx) {
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real()))) continue;
    Rat r = approximate(z.real(), 1000000);
    if (rest.degree() <= 0 || rest.eval(r) != 0) continue;
    Poly lin = Poly::x() - Poly(r);
    rest = exact_div(rest, lin);
    out.push_back(lin);
  }
  if (rest.degree() > 0) out.push_back(rest);
  return out;
}

Rat linear_root(const Poly& linear) {
  if (linear.degree() != 1) throw std::invalid_argument("linear_root of a nonlinear polynomial");
  return -linear.coeff(0) / linear.coeff(1);
}

}  // namespace bethe
