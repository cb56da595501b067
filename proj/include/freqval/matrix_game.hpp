#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "freqval/errors.hpp"
#include "freqval/matrix.hpp"

namespace freqval {

// Value and optimal mixed strategies of the zero-sum game max_u min_v u^T M v,
// together with the saddle certificate: min_j (u*M)_j and max_i (M v*)_i must
// bracket the value within 1e-9 * (1 + max|M_ij|).
struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> u_star;     // row player's optimal mixed strategy
  std::vector<double> v_star;     // column player's optimal mixed strategy
  std::vector<double> u_payoffs;  // (u* M)_j for every column j
  std::vector<double> v_payoffs;  // (M v*)_i for every row i

  // Worst certificate violation; <= 0 when the certificate brackets the value.
  double certificate_gap() const {
    double g = 0.0;
    for (double p : u_payoffs) g = std::max(g, value - p);
    for (double p : v_payoffs) g = std::max(g, p - value);
    return g;
  }
};

namespace detail {

// Value of a 2x2 game. Pure saddle when the pure max-min meets the pure
// min-max; otherwise the mixed formula, written in the anchored form
// b + (a-b)(d-b)/D so that near-saddle matrices do not cancel catastrophically.
inline double val2x2(double a, double b, double c, double d) {
  const double lower = std::max(std::min(a, b), std::min(c, d));
  const double upper = std::min(std::max(a, c), std::max(b, d));
  if (lower >= upper) return lower;
  const double denom = (a - b) + (d - c);
  return b + (a - b) * (d - b) / denom;
}

inline void clamp_to_simplex(std::vector<double>& p) {
  double s = 0.0;
  for (double& x : p) {
    if (x < 0.0) x = 0.0;
    s += x;
  }
  if (s <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
  } else {
    for (double& x : p) x /= s;
  }
}

struct SimplexResult {
  double value = 0.0;
  std::vector<double> u, v;
};

// Dense tableau simplex with Bland's rule on the bounded LP
//     maximize sum(y)   s.t.  M'y <= 1,  y >= 0,
// where M' is M shifted so every entry is >= 1. The optimum recovers
// val(M') = 1/sum(y*); the column player's strategy is y*/sum(y*) and the
// row player's comes from the slack duals. The pivot order is fixed
// (lowest eligible index), so results are reproducible bit for bit.
inline SimplexResult solve_simplex(const Matrix& M) {
  const int m = M.rows(), n = M.cols();
  const double shift = 1.0 + std::max(0.0, -M.min_entry());
  const int width = n + m + 1;  // variables, slacks, rhs
  std::vector<double> tab(static_cast<std::size_t>(m) * width, 0.0);
  for (int i = 0; i < m; ++i) {
    double* row = &tab[static_cast<std::size_t>(i) * width];
    for (int j = 0; j < n; ++j) row[j] = M(i, j) + shift;
    row[n + i] = 1.0;
    row[width - 1] = 1.0;
  }
  std::vector<double> zrow(width, 0.0);
  for (int j = 0; j < n; ++j) zrow[j] = -1.0;
  std::vector<int> basis(m);
  std::iota(basis.begin(), basis.end(), n);

  const double eps = 1e-12 * std::max(1.0, M.max_abs() + shift);
  const int max_iters = 200 * (m + n) + 1000;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    int e = -1;
    for (int j = 0; j < width - 1; ++j) {
      if (zrow[j] < -eps) { e = j; break; }  // Bland: lowest index enters
    }
    if (e < 0) break;
    int r = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double* row = &tab[static_cast<std::size_t>(i) * width];
      if (row[e] > eps) {
        const double ratio = row[width - 1] / row[e];
        if (ratio < best - eps) {
          best = ratio;
          r = i;
        } else if (ratio <= best + eps && r >= 0 && basis[i] < basis[r]) {
          r = i;  // Bland: lowest basis index leaves on ties
        }
      }
    }
    if (r < 0)
      throw numeric_error("solve_value: simplex detected an unbounded LP");
    double* prow = &tab[static_cast<std::size_t>(r) * width];
    const double piv = prow[e];
    for (int j = 0; j < width; ++j) prow[j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      double* row = &tab[static_cast<std::size_t>(i) * width];
      const double f = row[e];
      if (f != 0.0)
        for (int j = 0; j < width; ++j) row[j] -= f * prow[j];
    }
    const double f = zrow[e];
    for (int j = 0; j < width; ++j) zrow[j] -= f * prow[j];
    basis[r] = e;
  }
  if (iter >= max_iters)
    throw numeric_error("solve_value: simplex iteration cap exceeded");

  const double Z = zrow[width - 1];
  if (!(Z > 0.0) || !std::isfinite(Z))
    throw numeric_error("solve_value: degenerate simplex objective");

  SimplexResult res;
  res.value = 1.0 / Z - shift;
  res.v.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.v[basis[i]] = tab[static_cast<std::size_t>(i) * width + width - 1];
  res.u.assign(m, 0.0);
  for (int i = 0; i < m; ++i) res.u[i] = zrow[n + i];  // duals of My <= 1
  for (double& x : res.u) x /= Z;
  for (double& x : res.v) x /= Z;
  clamp_to_simplex(res.u);
  clamp_to_simplex(res.v);
  return res;
}

}  // namespace detail

// Exact value and optimal mixed strategies of the matrix game. Degenerate
// shapes (single row or column) reduce to pure best responses, 2x2 games to
// the classic saddle/mixed dichotomy, everything else to the simplex LP.
inline MatrixGameSolution solve_value(const Matrix& M) {
  if (!M.is_finite())
    throw std::domain_error("solve_value: matrix entries must be finite");
  const int m = M.rows(), n = M.cols();
  MatrixGameSolution sol;

  if (m == 1 && n == 1) {
    sol.value = M(0, 0);
    sol.u_star = {1.0};
    sol.v_star = {1.0};
  } else if (m == 1) {
    int jbest = 0;
    for (int j = 1; j < n; ++j)
      if (M(0, j) < M(0, jbest)) jbest = j;
    sol.value = M(0, jbest);
    sol.u_star = {1.0};
    sol.v_star.assign(n, 0.0);
    sol.v_star[jbest] = 1.0;
  } else if (n == 1) {
    int ibest = 0;
    for (int i = 1; i < m; ++i)
      if (M(i, 0) > M(ibest, 0)) ibest = i;
    sol.value = M(ibest, 0);
    sol.u_star.assign(m, 0.0);
    sol.u_star[ibest] = 1.0;
    sol.v_star = {1.0};
  } else if (m == 2 && n == 2) {
    const double a = M(0, 0), b = M(0, 1), c = M(1, 0), d = M(1, 1);
    const double lo0 = std::min(a, b), lo1 = std::min(c, d);
    const double hi0 = std::max(a, c), hi1 = std::max(b, d);
    const double lower = std::max(lo0, lo1);
    const double upper = std::min(hi0, hi1);
    if (lower >= upper) {
      sol.value = lower;
      sol.u_star = (lo0 >= lo1) ? std::vector<double>{1.0, 0.0}
                                : std::vector<double>{0.0, 1.0};
      sol.v_star = (hi0 <= hi1) ? std::vector<double>{1.0, 0.0}
                                : std::vector<double>{0.0, 1.0};
    } else {
      const double denom = (a - b) + (d - c);
      sol.value = b + (a - b) * (d - b) / denom;
      sol.u_star = {(d - c) / denom, (a - b) / denom};
      sol.v_star = {(d - b) / denom, (a - c) / denom};
      detail::clamp_to_simplex(sol.u_star);
      detail::clamp_to_simplex(sol.v_star);
    }
  } else {
    detail::SimplexResult r = detail::solve_simplex(M);
    sol.value = r.value;
    sol.u_star = std::move(r.u);
    sol.v_star = std::move(r.v);
  }

  sol.u_payoffs.assign(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) sol.u_payoffs[j] += sol.u_star[i] * M(i, j);
  sol.v_payoffs.assign(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) sol.v_payoffs[i] += M(i, j) * sol.v_star[j];
  return sol;
}

// The val operator: value of the matrix game under optimal mixed play.
inline double val(const Matrix& M) { return solve_value(M).value; }

}  // namespace freqval
