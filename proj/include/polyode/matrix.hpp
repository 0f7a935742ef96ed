#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyode/upoly.hpp"

namespace polyode {

/// Row-major dense matrix of ring elements.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Fraction-free (Bareiss) determinant over an integral domain. Every
/// division is exact; a row swap flips the sign. A column with no nonzero
/// pivot candidate makes the determinant zero. The empty matrix has
/// determinant one.
template <class T>
T bareiss_determinant(Matrix<T> m) {
  if (!m.square()) throw std::invalid_argument("bareiss_determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  bool negate = false;
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return T();
      m.swap_rows(k, p);
      negate = !negate;
    }
    const T& pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T& lead = m(i, k);
      const bool lead_zero = is_zero(lead);
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = m(i, j) * pivot;
        if (!lead_zero) v = v - lead * m(k, j);
        m(i, j) = exact_div(v, prev);
      }
      m(i, k) = T();
    }
    prev = m(k, k);
  }
  T det = m(n - 1, n - 1);
  return negate ? -det : det;
}

}  // namespace polyode
