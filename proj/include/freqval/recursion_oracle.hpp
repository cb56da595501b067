#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "freqval/errors.hpp"
#include "freqval/game_core.hpp"
#include "freqval/matrix_game.hpp"

namespace freqval {

// Caps for the brute-force computations. These are configuration, not
// constants: callers that knowingly want bigger sweeps raise them.
struct OracleLimits {
  int max_depth = 8;                          // Shapley recursion depth
  std::size_t max_shell_states = 1'000'000;   // largest enumerated shell
  long long max_horizon = 1'000'000;          // discounted truncation steps
};

namespace detail {

// Lexicographic indexing of the compositions of d into k nonnegative parts,
// i.e. the count increments forming the shell Pi_{|z0|+d}. Ranks are the
// positions in ascending lexicographic order, which lets shells live in flat
// arrays instead of ordered maps. Binomials are built saturating so that
// oversized shells are detected instead of overflowing.
class ShellIndexer {
 public:
  static constexpr unsigned long long kSaturated = 1ull << 62;

  ShellIndexer(int parts, long long max_total) : k_(parts) {
    if (parts < 1) throw std::invalid_argument("ShellIndexer: parts must be >= 1");
    if (k_ < 3) return;
    const long long nmax = max_total + parts;
    // rows_[j-2][n] = C(n, j), j = 2..k-1
    rows_.assign(static_cast<std::size_t>(k_ - 2), {});
    std::vector<unsigned long long> prev(static_cast<std::size_t>(nmax) + 1);
    for (long long n = 0; n <= nmax; ++n)
      prev[static_cast<std::size_t>(n)] = static_cast<unsigned long long>(n);  // C(n,1)
    for (int j = 2; j <= k_ - 1; ++j) {
      std::vector<unsigned long long> cur(static_cast<std::size_t>(nmax) + 1, 0);
      for (long long n = 1; n <= nmax; ++n) {
        const unsigned long long s =
            cur[static_cast<std::size_t>(n - 1)] + prev[static_cast<std::size_t>(n - 1)];
        cur[static_cast<std::size_t>(n)] = std::min(s, kSaturated);
      }
      rows_[static_cast<std::size_t>(j - 2)] = cur;
      prev = rows_[static_cast<std::size_t>(j - 2)];
    }
  }

  int parts() const { return k_; }

  unsigned long long binom(long long n, int j) const {
    if (j < 0 || n < j) return 0;
    if (j == 0) return 1;
    if (j == 1) return static_cast<unsigned long long>(n);
    return rows_[static_cast<std::size_t>(j - 2)][static_cast<std::size_t>(n)];
  }

  // Number of states on the shell of total d; saturates when enormous.
  unsigned long long size(long long d) const { return binom(d + k_ - 1, k_ - 1); }

  // Rank of a full composition y (sum d) in lexicographic order.
  std::size_t rank(const long long* y, long long d) const {
    unsigned long long r = 0;
    long long rem = d;
    for (int p = 0; p < k_ - 1; ++p) {
      const int m = k_ - p - 1;  // parts after position p
      r += binom(rem + m, m) - binom(rem - y[p] + m, m);
      rem -= y[p];
    }
    return static_cast<std::size_t>(r);
  }

  // Rank of the first composition whose leading coordinates equal `prefix`.
  std::size_t block_start(const long long* prefix, int plen, long long d) const {
    unsigned long long r = 0;
    long long rem = d;
    for (int p = 0; p < plen; ++p) {
      const int m = k_ - p - 1;
      r += binom(rem + m, m) - binom(rem - prefix[p] + m, m);
      rem -= prefix[p];
    }
    return static_cast<std::size_t>(r);
  }

 private:
  int k_;
  std::vector<std::vector<unsigned long long>> rows_;
};

// Lexicographic successor within {prefix : sum <= d}; false when exhausted.
inline bool advance_prefix(std::vector<long long>& p, long long d) {
  long long head = std::accumulate(p.begin(), p.end(), 0ll);
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (head + 1 <= d) {
      ++p[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < p.size(); ++j) p[j] = 0;
      return true;
    }
    head -= p[static_cast<std::size_t>(i)];
  }
  return false;
}

enum class ValShape { one, row, col, two_two, general };

inline ValShape classify_shape(int rows, int cols) {
  if (rows == 1 && cols == 1) return ValShape::one;
  if (rows == 2 && cols == 2) return ValShape::two_two;
  if (rows == 1) return ValShape::row;
  if (cols == 1) return ValShape::col;
  return ValShape::general;
}

inline double val_flat(ValShape s, int rows, int cols, const double* b) {
  switch (s) {
    case ValShape::one:
      return b[0];
    case ValShape::row: {
      double m = b[0];
      for (int j = 1; j < cols; ++j) m = std::min(m, b[j]);
      return m;
    }
    case ValShape::col: {
      double m = b[0];
      for (int i = 1; i < rows; ++i) m = std::max(m, b[i]);
      return m;
    }
    case ValShape::two_two:
      return val2x2(b[0], b[1], b[2], b[3]);
    case ValShape::general:
      return val(Matrix(rows, cols,
                        std::vector<double>(b, b + static_cast<std::size_t>(rows) * cols)));
  }
  return 0.0;
}

// Per-state combination used by one backward step:
//   out(z) = ch * h(z) + cr * val(ca * A + cv * V_next(z + e_ij)).
struct SweepCoefs {
  double ch, cr, ca, cv;
};

// Fills shell d from shell d+1. States are visited in lexicographic order;
// within a block of fixed leading coordinates the neighbor ranks in the next
// shell advance linearly, so only block starts need full rank computations.
inline void backward_step(const ShellIndexer& ix, const GameSpec& g,
                          const std::vector<long long>& z0, long long radius0,
                          long long d, const std::vector<double>& next,
                          std::vector<double>& out, const SweepCoefs& cf) {
  const int k = ix.parts();
  const int rows = g.rows(), cols = g.cols();
  const double* A = g.A.data().data();
  const double* H = g.H.data().data();
  const double r_total = static_cast<double>(radius0 + d);
  const ValShape shape = classify_shape(rows, cols);

  if (k == 1) {
    const double b = cf.ca * A[0] + cf.cv * next[0];
    const double h = r_total > 0 ? cf.ch * H[0] : 0.0;  // z/|z| = 1 for 1x1
    out[0] = h + cf.cr * b;
    return;
  }

  const int P = k - 2;
  std::vector<long long> prefix(static_cast<std::size_t>(P), 0);
  std::vector<std::size_t> bs(static_cast<std::size_t>(P), 0);
  std::vector<double> b(static_cast<std::size_t>(k), 0.0);
  std::size_t pos = 0;
  while (true) {
    long long psum = 0;
    for (long long x : prefix) psum += x;
    const long long rem = d - psum;

    const std::size_t bs_same = ix.block_start(prefix.data(), P, d + 1);
    for (int m = 0; m < P; ++m) {
      ++prefix[static_cast<std::size_t>(m)];
      bs[static_cast<std::size_t>(m)] = ix.block_start(prefix.data(), P, d + 1);
      --prefix[static_cast<std::size_t>(m)];
    }

    double hz0 = 0.0;
    for (int i = 0; i < P; ++i)
      hz0 += H[i] * static_cast<double>(z0[static_cast<std::size_t>(i)] +
                                        prefix[static_cast<std::size_t>(i)]);
    hz0 += H[P] * static_cast<double>(z0[static_cast<std::size_t>(P)]);
    hz0 += H[P + 1] * static_cast<double>(z0[static_cast<std::size_t>(P) + 1] + rem);
    const double dH = H[P] - H[P + 1];

    for (long long a = 0; a <= rem; ++a, ++pos) {
      for (int m = 0; m < P; ++m)
        b[static_cast<std::size_t>(m)] =
            cf.ca * A[m] + cf.cv * next[bs[static_cast<std::size_t>(m)] + a];
      b[static_cast<std::size_t>(P)] =
          cf.ca * A[P] + cf.cv * next[bs_same + static_cast<std::size_t>(a) + 1];
      b[static_cast<std::size_t>(P) + 1] =
          cf.ca * A[P + 1] + cf.cv * next[bs_same + static_cast<std::size_t>(a)];
      const double h =
          r_total > 0 ? cf.ch * (hz0 + static_cast<double>(a) * dH) / r_total : 0.0;
      out[pos] = h + cf.cr * val_flat(shape, rows, cols, b.data());
    }
    if (!advance_prefix(prefix, d)) break;
  }
}

}  // namespace detail

// Value table over one shell: all states base + y with |y| = depth, stored
// flat over the lexicographic ranks of the increments y.
struct ShellTable {
  StateCount base;
  long long depth = 0;
  std::vector<double> values;

  long long radius() const { return base.total() + depth; }

  double value_at(const StateCount& z) const {
    if (z.rows() != base.rows() || z.cols() != base.cols())
      throw std::invalid_argument("ShellTable: state dimensions mismatch");
    std::vector<long long> y(z.counts().size());
    long long total = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = z.counts()[i] - base.counts()[i];
      if (y[i] < 0)
        throw std::invalid_argument("ShellTable: state not reachable from base");
      total += y[i];
    }
    if (total != depth)
      throw std::invalid_argument("ShellTable: state not on this shell");
    const int k = z.rows() * z.cols();
    detail::ShellIndexer ix(k, depth);
    return values[ix.rank(y.data(), depth)];
  }
};

namespace detail {

// C(d+k-1, k-1) without building the full binomial table; exact while the
// result is far below the saturation point, which is all a cap check needs.
inline unsigned long long shell_size_bound(int k, long long d) {
  long double p = 1.0L;
  for (int i = 0; i < k - 1; ++i) {
    p = p * static_cast<long double>(d + k - 1 - i) / static_cast<long double>(i + 1);
    if (p > 4.0e18L) return ShellIndexer::kSaturated;
  }
  return static_cast<unsigned long long>(p + 0.5L);
}

inline void check_shell_cap(int k, long long d, const OracleLimits& lim) {
  const unsigned long long sz = shell_size_bound(k, d);
  if (sz > lim.max_shell_states)
    throw resource_error(
        "shell of " + std::to_string(sz) + " states exceeds max_shell_states=" +
        std::to_string(lim.max_shell_states));
}

// Exactly T applications of the discounted one-step operator from the zero
// function, evaluated at z0. Exposed so tests can probe the contraction.
inline double discounted_truncated(const GameSpec& g, const StateCount& z0,
                                   double lambda, long long T,
                                   const OracleLimits& lim) {
  if (T <= 0) return 0.0;
  const int k = g.rows() * g.cols();
  check_shell_cap(k, T, lim);
  ShellIndexer ix(k, T);
  const long long radius0 = z0.total();
  // Two ping-pong buffers sized for the largest shell; every slot in use is
  // overwritten by the sweep, so no per-shell re-initialization is needed.
  const std::size_t top = static_cast<std::size_t>(ix.size(T));
  std::vector<double> buf_a(top, 0.0), buf_b(top);
  std::vector<double>* next = &buf_a;  // shell T: terminal zeros
  std::vector<double>* cur = &buf_b;
  const SweepCoefs cf{lambda, 1.0, lambda, 1.0 - lambda};
  for (long long d = T - 1; d >= 0; --d) {
    backward_step(ix, g, z0.counts(), radius0, d, *next, *cur, cf);
    std::swap(next, cur);
  }
  return (*next)[0];
}

}  // namespace detail

// V_n(z0) by explicit backward induction over the reachable shells,
// solving one matrix game per state per level. Exact up to val tolerance;
// meant as the reference everything else is validated against.
inline double shapley_value_exact(const GameSpec& g, const StateCount& z0, int n,
                                  const OracleLimits& lim = {}) {
  if (n < 1) throw std::domain_error("shapley_value_exact: n must be positive");
  if (n > lim.max_depth)
    throw resource_error("shapley_value_exact: depth " + std::to_string(n) +
                         " exceeds max_depth=" + std::to_string(lim.max_depth));
  const int k = g.rows() * g.cols();
  detail::check_shell_cap(k, n, lim);
  detail::ShellIndexer ix(k, n);
  const long long radius0 = z0.total();
  ShellTable next{z0, n, std::vector<double>(static_cast<std::size_t>(ix.size(n)), 0.0)};
  for (int m = 0; m < n; ++m) {
    const long long d = n - 1 - m;  // shell holding V_{m+1}
    const double inv = 1.0 / static_cast<double>(m + 1);
    const detail::SweepCoefs cf{inv, inv, 1.0, static_cast<double>(m)};
    ShellTable cur{z0, d, std::vector<double>(static_cast<std::size_t>(ix.size(d)))};
    detail::backward_step(ix, g, z0.counts(), radius0, d, next.values, cur.values, cf);
    next = std::move(cur);
  }
  return next.values[0];
}

// V_lambda(z0) within tol, by truncated iteration of the discounted
// one-step operator: T is chosen so (1-lambda)^T (max|A|+max|H|) <= tol,
// and the (1-lambda) contraction turns that into |result - V_lambda| <= tol.
inline double discounted_value_iterate(const GameSpec& g, const StateCount& z0,
                                       double lambda, double tol,
                                       const OracleLimits& lim = {}) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("discounted_value_iterate: lambda must lie in (0,1)");
  if (!(tol > 0.0))
    throw std::domain_error("discounted_value_iterate: tol must be positive");
  const long long T = detail::discount_horizon(lambda, tol, g.payoff_bound());
  if (T > lim.max_horizon)
    throw resource_error("discounted_value_iterate: horizon " + std::to_string(T) +
                         " exceeds max_horizon=" + std::to_string(lim.max_horizon));
  return detail::discounted_truncated(g, z0, lambda, T, lim);
}

// Uniform-over-plays bound on |gamma_N(z,.) - gamma_N(0,.)|:
//   (||H||_inf / N) (1 + 2|z| ln((|z|+N)/|z|)),
// the harmonic block replaced by its integral majorant, which keeps the
// bound explicit and valid for every N.
inline double payoff_gap_bound_n(const GameSpec& g, const StateCount& z, long long N) {
  if (N < 1) throw std::domain_error("payoff_gap_bound_n: N must be positive");
  const long long t = z.total();
  if (t == 0) return 0.0;
  const double zn = static_cast<double>(t);
  const double dn = static_cast<double>(N);
  return g.h_norm() / dn * (1.0 + 2.0 * zn * std::log((zn + dn) / zn));
}

// Discounted analogue, splitting the series at N = floor(1/lambda) - |z|:
//   2 ||H||_inf lambda |z| ( ln((|z|+N)/|z|) + (1-lambda)^N ).
inline double payoff_gap_bound_lambda(const GameSpec& g, const StateCount& z,
                                      double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("payoff_gap_bound_lambda: lambda must lie in (0,1)");
  const long long t = z.total();
  if (t == 0) return 0.0;
  const double zn = static_cast<double>(t);
  if (lambda * zn >= 1.0)
    throw std::domain_error("payoff_gap_bound_lambda: requires lambda*|z| < 1");
  const long long nsplit =
      static_cast<long long>(std::floor(1.0 / lambda)) - t;  // >= 0 here
  const double head = std::log((zn + static_cast<double>(nsplit)) / zn);
  const double tail = std::pow(1.0 - lambda, static_cast<double>(nsplit));
  return 2.0 * g.h_norm() * lambda * zn * (head + tail);
}

}  // namespace freqval
