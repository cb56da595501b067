#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freqval/matrix.hpp"

namespace freqval {

// A two-player zero-sum frequency-dependent game with separable payoffs.
// A holds the stage-action payoffs a_ij, H the frequency weights; the stage
// payoff at state z is a_ij + <H, z/|z|> (0 at z = 0). Player 1 maximizes.
struct GameSpec {
  Matrix A;
  Matrix H;

  GameSpec(Matrix a, Matrix h) : A(std::move(a)), H(std::move(h)) {
    if (!A.same_shape(H))
      throw std::invalid_argument("GameSpec: A and H must share dimensions");
    if (!A.is_finite() || !H.is_finite())
      throw std::invalid_argument("GameSpec: matrices must be finite");
  }

  int rows() const { return A.rows(); }
  int cols() const { return A.cols(); }

  // Sup bound on any stage payoff: max|a_ij| + max|H_ij|.
  double payoff_bound() const { return A.max_abs() + H.max_abs(); }

  // The paper's ||H||_inf, i.e. the largest |H_ij|.
  double h_norm() const { return H.max_abs(); }
};

// Aggregate past-action counts z in N^{IxJ}; |z| is the entry sum.
class StateCount {
 public:
  StateCount(int rows, int cols)
      : rows_(rows), cols_(cols),
        z_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 1 || cols < 1)
      throw std::invalid_argument("StateCount: dimensions must be at least 1x1");
  }

  StateCount(int rows, int cols, std::vector<long long> counts)
      : rows_(rows), cols_(cols), z_(std::move(counts)) {
    if (rows < 1 || cols < 1)
      throw std::invalid_argument("StateCount: dimensions must be at least 1x1");
    if (z_.size() != static_cast<std::size_t>(rows) * cols)
      throw std::invalid_argument("StateCount: entry count does not match rows*cols");
    for (long long c : z_)
      if (c < 0) throw std::invalid_argument("StateCount: counts must be nonnegative");
  }

  static StateCount zero(int rows, int cols) { return StateCount(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  long long at(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return z_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<long long>& counts() const { return z_; }

  long long total() const {
    long long s = 0;
    for (long long c : z_) s += c;
    return s;
  }

  void bump(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    ++z_[static_cast<std::size_t>(i) * cols_ + j];
  }

  StateCount bumped(int i, int j) const {
    StateCount r = *this;
    r.bump(i, j);
    return r;
  }

  Matrix as_matrix() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < z_.size(); ++i)
      m.data()[i] = static_cast<double>(z_[i]);
    return m;
  }

  bool operator==(const StateCount& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && z_ == o.z_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<long long> z_;
};

// Continuous nonnegative state q in R_+^{IxJ}; |q| is the entry sum.
class QuotientState {
 public:
  QuotientState(int rows, int cols) : q_(rows, cols) {}

  explicit QuotientState(Matrix q) : q_(std::move(q)) {
    for (double x : q_.data())
      if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("QuotientState: entries must be finite and >= 0");
  }

  QuotientState(int rows, int cols, std::vector<double> entries)
      : QuotientState(Matrix(rows, cols, std::move(entries))) {}

  static QuotientState zero(int rows, int cols) { return QuotientState(rows, cols); }

  int rows() const { return q_.rows(); }
  int cols() const { return q_.cols(); }
  const Matrix& matrix() const { return q_; }
  double total() const { return q_.sum(); }

  QuotientState scaled(double c) const {
    if (c < 0.0) throw std::invalid_argument("QuotientState: negative scale");
    return QuotientState(c * q_);
  }

 private:
  Matrix q_;
};

inline QuotientState as_quotient(const StateCount& z) {
  return QuotientState(z.as_matrix());
}

inline bool is_probability_vector(const std::vector<double>& p, double tol = 1e-12) {
  if (p.empty()) return false;
  double s = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) return false;
    s += x;
  }
  return std::abs(s - 1.0) <= tol;
}

// Outer product u (x) v as an |I|x|J| matrix.
inline Matrix outer(const std::vector<double>& u, const std::vector<double>& v) {
  Matrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = u[i] * v[j];
  return m;
}

// One mixed move per player.
struct MixedProfile {
  std::vector<double> u;
  std::vector<double> v;

  MixedProfile(std::vector<double> uu, std::vector<double> vv)
      : u(std::move(uu)), v(std::move(vv)) {
    if (!is_probability_vector(u) || !is_probability_vector(v))
      throw std::invalid_argument("MixedProfile: u and v must be probability vectors");
  }

  Matrix outer_product() const { return outer(u, v); }
};

// A play is the sequence of pure action pairs actually chosen.
using Play = std::vector<std::pair<int, int>>;

}  // namespace freqval
