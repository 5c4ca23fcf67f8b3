#include "bethe/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bethe/errors.hpp"

namespace bethe {

namespace {

std::vector<double> to_double(const Poly& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& r : p.coeffs()) c.push_back(r.get_d());
  return c;
}

/// p(z) and p'(z) by Horner.
std::pair<Complex, Complex> horner2(const std::vector<double>& c, Complex z) {
  Complex v = 0.0, d = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

double residual(const std::vector<double>& c, Complex z) {
  const int deg = static_cast<int>(c.size()) - 1;
  const double scale = std::abs(c.back()) * std::pow(1.0 + std::abs(z), deg);
  return std::abs(horner2(c, z).first) / scale;
}

}  // namespace

Complex eval_complex(const Poly& p, Complex at) { return horner2(to_double(p), at).first; }

double scaled_residual(const Poly& p, Complex at) { return residual(to_double(p), at); }

std::vector<Complex> roots_numeric(const Poly& p, double tol, int max_iter) {
  if (p.is_zero()) throw std::invalid_argument("roots_numeric of the zero polynomial");
  const int deg = p.degree();
  std::vector<Complex> z;
  if (deg == 0) return z;

  std::vector<double> c = to_double(p);
  const double lead = c.back();
  for (auto& v : c) v /= lead;

  // Initial guesses on a circle of radius given by the Cauchy bound,
  // rotated off the real axis to break symmetry.
  double bound = 0.0;
  for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(i)]));
  const double radius = std::min(1.0 + bound, 1e6) * 0.5 + 0.1;
  const Complex center = -c[static_cast<std::size_t>(deg - 1)] / static_cast<double>(deg);
  for (int k = 0; k < deg; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / deg + 0.4;
    z.push_back(center + std::polar(radius, angle));
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    double max_step = 0.0;
    for (int i = 0; i < deg; ++i) {
      auto [v, d] = horner2(c, z[static_cast<std::size_t>(i)]);
      if (v == Complex(0.0)) continue;
      const Complex ratio = v / d;
      Complex sum = 0.0;
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        Complex diff = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
        if (diff == Complex(0.0)) diff = Complex(1e-300);
        sum += 1.0 / diff;
      }
      const Complex step = ratio / (1.0 - ratio * sum);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) {
        z[static_cast<std::size_t>(i)] -= step;
        max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[static_cast<std::size_t>(i)])));
      }
    }
    bool ok = true;
    for (const auto& r : z) {
      if (residual(c, r) > tol) {
        ok = false;
        break;
      }
    }
    if (ok && max_step < 1e-14) return z;
    if (ok && iter > 5 && max_step < 1e-10) return z;
  }
  bool ok = std::all_of(z.begin(), z.end(), [&](Complex r) { return residual(c, r) <= tol; });
  if (ok) return z;
  throw NonConvergence("Aberth iteration did not converge for " + to_string(p));
}

}  // namespace bethe
