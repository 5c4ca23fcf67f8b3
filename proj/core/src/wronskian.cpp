#include "bethe/wronskian.hpp"

#include <stdexcept>
#include <utility>

namespace bethe {

Poly wronskian2(const Poly& f, const Poly& g) {
  return f * g.derivative() - f.derivative() * g;
}

Poly determinant(std::vector<std::vector<Poly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly(1);
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  }
  Poly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // Lowest-degree nonzero pivot keeps the intermediate degrees small.
    std::size_t p = n;
    for (std::size_t i = k; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      if (p == n || m[i][k].degree() < m[p][k].degree()) p = i;
    }
    if (p == n) return {};
    if (p != k) {
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      }
      m[i][k] = Poly();
    }
    prev = m[k][k];
  }
  Poly d = m[n - 1][n - 1];
  return negate ? -d : d;
}

Poly wronskian_n(std::span<const Poly> fs) {
  if (fs.empty()) throw std::invalid_argument("wronskian of an empty list");
  const std::size_t n = fs.size();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (std::size_t c = 0; c < n; ++c) {
    Poly d = fs[c];
    for (std::size_t r = 0; r < n; ++r) {
      m[r][c] = d;
      d = d.derivative();
    }
  }
  return determinant(std::move(m));
}

}  // namespace bethe
