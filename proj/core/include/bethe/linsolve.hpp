#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bethe/quotient.hpp"
#include "bethe/rat.hpp"

namespace bethe {

inline bool is_zero(const Rat& r) { return r == 0; }
inline bool is_zero(const QElem& e) { return e.is_zero(); }

/// Row-major dense matrix.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

/// A particular solution plus a basis of the null space. Unset `particular`
/// means the system is inconsistent.
template <class K>
struct LinearSolution {
  std::optional<std::vector<K>> particular;
  std::vector<std::vector<K>> nullspace;

  bool consistent() const { return particular.has_value(); }
};

namespace detail {

inline void require_unit(const Rat&) {}
/// Over a quotient ring a pivot must be a unit; a zero divisor splits.
inline void require_unit(const QElem& e) { e.require_unit(); }

}  // namespace detail

/// Fraction-free (Bareiss) elimination of A x = b. Every division performed
/// is exact in an integral domain; over Q[t]/(q) a zero-divisor pivot raises
/// SplitRequired.
template <class K>
LinearSolution<K> linear_solve(const Matrix<K>& a, const std::vector<K>& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw std::invalid_argument("linear_solve: dimension mismatch");

  Matrix<K> aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }

  K prev(1);
  std::size_t row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && is_zero(aug(p, col))) ++p;
    if (p == m) continue;
    detail::require_unit(aug(p, col));
    aug.swap_rows(p, row);
    const K piv = aug(row, col);
    for (std::size_t i = row + 1; i < m; ++i) {
      const K lead = aug(i, col);
      for (std::size_t j = col + 1; j <= n; ++j) {
        aug(i, j) = (piv * aug(i, j) - lead * aug(row, j)) / prev;
      }
      aug(i, col) = K(0);
    }
    prev = piv;
    pivot_cols.push_back(col);
    ++row;
  }

  LinearSolution<K> out;
  for (std::size_t i = row; i < m; ++i) {
    if (!is_zero(aug(i, n))) return out;
  }

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;

  auto back_substitute = [&](std::vector<K> x, bool homogeneous) {
    for (std::size_t k = pivot_cols.size(); k-- > 0;) {
      const std::size_t pc = pivot_cols[k];
      K acc = homogeneous ? K(0) : aug(k, n);
      for (std::size_t j = pc + 1; j < n; ++j) {
        if (!is_zero(x[j])) acc = acc - aug(k, j) * x[j];
      }
      x[pc] = acc / aug(k, pc);
    }
    return x;
  };

  out.particular = back_substitute(std::vector<K>(n, K(0)), false);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> x(n, K(0));
    x[f] = K(1);
    out.nullspace.push_back(back_substitute(std::move(x), true));
  }
  return out;
}

}  // namespace bethe
