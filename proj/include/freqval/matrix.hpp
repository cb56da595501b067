#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace freqval {

// Dense row-major matrix of doubles. Game matrices here are tiny (a handful
// of rows and columns) but get combined millions of times inside backward
// recursions, so the type stays flat and copy-friendly.
class Matrix {
 public:
  Matrix() = default;

  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(checked_size(rows, cols), fill) {}

  Matrix(int rows, int cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != checked_size(rows, cols))
      throw std::invalid_argument("Matrix: entry count does not match rows*cols");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return a_.size(); }

  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  bool is_finite() const {
    for (double x : a_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  // Largest absolute entry; the sup norm used in all payoff bounds.
  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
  }

  double min_entry() const {
    double m = a_.empty() ? 0.0 : a_[0];
    for (double x : a_) m = std::min(m, x);
    return m;
  }

  double sum() const {
    double s = 0.0;
    for (double x : a_) s += x;
    return s;
  }

  Matrix& operator+=(const Matrix& o) {
    require_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    require_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }

  Matrix& operator*=(double c) {
    for (double& x : a_) x *= c;
    return *this;
  }

  // Entries plus a constant, i.e. M + c*ones.
  Matrix shifted(double c) const {
    Matrix r = *this;
    for (double& x : r.a_) x += c;
    return r;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

 private:
  static std::size_t checked_size(int rows, int cols) {
    if (rows < 1 || cols < 1)
      throw std::invalid_argument("Matrix: dimensions must be at least 1x1");
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  void require_shape(const Matrix& o) const {
    if (!same_shape(o)) throw std::invalid_argument("Matrix: shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

inline Matrix operator+(Matrix a, const Matrix& b) { a += b; return a; }
inline Matrix operator-(Matrix a, const Matrix& b) { a -= b; return a; }
inline Matrix operator*(double c, Matrix a) { a *= c; return a; }

// Canonical inner product <a, b> = sum_ij a_ij * b_ij.
inline double inner(const Matrix& a, const Matrix& b) {
  assert(a.same_shape(b));
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

}  // namespace freqval
