#pragma once

#include <cmath>
#include <stdexcept>

#include "freqval/game_core.hpp"
#include "freqval/matrix_game.hpp"

namespace freqval {

// Harmonic block Lambda_p(a) = sum_{k=0}^{p-1} 1/(a+k), accumulated from the
// smallest term up so rounding stays bounded for p in the millions.
inline double harmonic_lambda(double a, long long p) {
  if (!(a > 0.0)) throw std::domain_error("harmonic_lambda: a must be positive");
  if (p < 0) throw std::domain_error("harmonic_lambda: p must be nonnegative");
  double s = 0.0;
  for (long long k = p - 1; k >= 0; --k) s += 1.0 / (a + static_cast<double>(k));
  return s;
}

// K_{n,t} = Lambda_n(t) H, the linear part of n V_n on the shell |z| = t.
inline Matrix k_matrix(const GameSpec& g, long long n, long long t) {
  if (n < 1) throw std::domain_error("k_matrix: n must be positive");
  if (t < 1) throw std::domain_error("k_matrix: t must be positive");
  return harmonic_lambda(static_cast<double>(t), n) * g.H;
}

// Constant part C_{n,t} of n V_n, by the backward chain
//   C_{1,s} = val(A),   C_{m+1,s} = val(A + K_{m,s+1}) + C_{m,s+1},
// walked iteratively along (m, t+n-m). The Lambda argument shrinks by one per
// step, so the harmonic sum is extended by its next-smallest term in place.
inline double c_constant(const GameSpec& g, long long n, long long t) {
  if (n < 1) throw std::domain_error("c_constant: n must be positive");
  if (t < 1) throw std::domain_error("c_constant: t must be positive");
  double c = val(g.A);
  double lam = 0.0;
  for (long long m = 1; m < n; ++m) {
    lam += 1.0 / static_cast<double>(t + n - m);  // lam = Lambda_m(t+n-m)
    c += val(g.A + lam * g.H);
  }
  return c;
}

// V_n(z) = (<K_{n,|z|}, z> + C_{n,|z|}) / n for states off the origin.
inline double n_stage_value(const GameSpec& g, const StateCount& z, long long n) {
  if (n < 1) throw std::domain_error("n_stage_value: n must be positive");
  const long long t = z.total();
  if (t < 1)
    throw std::domain_error("n_stage_value: |z| = 0; use n_stage_value_origin");
  const Matrix K = k_matrix(g, n, t);
  const double C = c_constant(g, n, t);
  return (inner(K, z.as_matrix()) + C) / static_cast<double>(n);
}

// V_N(0), unfolding the Shapley recursion once from the origin (h(0) = 0):
//   N V_N(0) = val(A + K_{N-1,1}) + C_{N-1,1},   V_1(0) = val(A).
// Costs O(N) matrix-game solves.
inline double n_stage_value_origin(const GameSpec& g, long long N) {
  if (N < 1) throw std::domain_error("n_stage_value_origin: N must be positive");
  if (N == 1) return val(g.A);
  const double top = val(g.A + k_matrix(g, N - 1, 1));
  return (top + c_constant(g, N - 1, 1)) / static_cast<double>(N);
}

// Limit of K_{n,N-n} along n/N -> rho: -ln(1-rho) H.
inline Matrix corollary_limit(const GameSpec& g, double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::domain_error("corollary_limit: rho must lie in (0,1)");
  return -std::log1p(-rho) * g.H;
}

}  // namespace freqval
