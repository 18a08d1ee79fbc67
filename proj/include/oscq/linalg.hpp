#pragma once

// Dense LU with full pivoting over BigReal / BigComplex.

#include <cstddef>
#include <utility>
#include <vector>

#include "oscq/bigfloat.hpp"
#include "oscq/errors.hpp"

namespace oscq {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

namespace detail {
inline BigReal mag(const BigReal& x) { return abs(x); }
inline BigReal mag(const BigComplex& z) { return abs(z); }
}  // namespace detail

/// PA Q = LU, stored compactly; rank deficiency is reported via the pivot magnitudes.
template <class T>
class FullPivLU {
 public:
  explicit FullPivLU(Matrix<T> a) : lu_(std::move(a)), n_(lu_.rows()), row_(n_), col_(n_) {
    for (std::size_t i = 0; i < n_; ++i) row_[i] = col_[i] = i;
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t pi = k, pj = k;
      BigReal best = detail::mag(lu_(k, k));
      for (std::size_t i = k; i < n_; ++i)
        for (std::size_t j = k; j < n_; ++j) {
          BigReal m = detail::mag(lu_(i, j));
          if (m > best) {
            best = std::move(m);
            pi = i;
            pj = j;
          }
        }
      if (pi != k) {
        for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(pi, j));
        std::swap(row_[k], row_[pi]);
        sign_ = -sign_;
      }
      if (pj != k) {
        for (std::size_t i = 0; i < n_; ++i) std::swap(lu_(i, k), lu_(i, pj));
        std::swap(col_[k], col_[pj]);
        sign_ = -sign_;
      }
      if (best.is_zero()) {
        singular_ = true;
        continue;
      }
      for (std::size_t i = k + 1; i < n_; ++i) {
        T f = lu_(i, k) / lu_(k, k);
        lu_(i, k) = f;
        for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) = lu_(i, j) - f * lu_(k, j);
      }
    }
  }

  bool singular() const { return singular_; }
  std::size_t size() const { return n_; }

  /// Smallest and largest pivot magnitude (conditioning indicator).
  std::pair<BigReal, BigReal> pivot_range() const {
    BigReal lo = detail::mag(lu_(0, 0)), hi = lo;
    for (std::size_t k = 1; k < n_; ++k) {
      BigReal m = detail::mag(lu_(k, k));
      if (m < lo) lo = m;
      if (m > hi) hi = m;
    }
    return {lo, hi};
  }

  T determinant() const {
    T d = lu_(0, 0);
    for (std::size_t k = 1; k < n_; ++k) d = d * lu_(k, k);
    return sign_ < 0 ? T(-d) : d;
  }

  std::vector<T> solve(const std::vector<T>& b) const {
    if (singular_) throw DomainError("linear solve with a singular matrix");
    std::vector<T> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      T s = b[row_[i]];
      for (std::size_t j = 0; j < i; ++j) s = s - lu_(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t ii = n_; ii-- > 0;) {
      T s = y[ii];
      for (std::size_t j = ii + 1; j < n_; ++j) s = s - lu_(ii, j) * y[j];
      y[ii] = s / lu_(ii, ii);
    }
    std::vector<T> x(n_);
    for (std::size_t k = 0; k < n_; ++k) x[col_[k]] = y[k];
    return x;
  }

 private:
  Matrix<T> lu_;
  std::size_t n_;
  std::vector<std::size_t> row_, col_;
  int sign_ = 1;
  bool singular_ = false;
};

}  // namespace oscq
