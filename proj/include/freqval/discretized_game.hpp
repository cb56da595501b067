#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freqval/closed_form.hpp"
#include "freqval/errors.hpp"
#include "freqval/game_core.hpp"
#include "freqval/matrix_game.hpp"

namespace freqval {

// An ordered subdivision of [t0, 1]. Discount subdivisions are cut before
// their infinite tail; the truncation flag marks that and tail_mass records
// the dropped time mass (the payoff it can carry is tail_mass times the
// sup-norm stage payoff).
struct Subdivision {
  double t0 = 0.0;
  std::vector<double> ts;      // breakpoints; ts.front() == t0
  bool truncated = false;
  double tail_mass = 0.0;

  std::size_t intervals() const { return ts.empty() ? 0 : ts.size() - 1; }

  double increment(std::size_t k) const { return ts[k + 1] - ts[k]; }

  double mesh() const {
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
      m = std::max(m, ts[k + 1] - ts[k]);
    return m;
  }

  double payoff_tail_bound(const GameSpec& g) const {
    return tail_mass * g.payoff_bound();
  }

  // Restriction to [ts[k], 1], keeping the remaining breakpoints.
  Subdivision suffix(std::size_t k) const {
    if (k >= ts.size())
      throw std::invalid_argument("Subdivision::suffix: breakpoint index out of range");
    Subdivision s;
    s.t0 = ts[k];
    s.ts.assign(ts.begin() + static_cast<std::ptrdiff_t>(k), ts.end());
    s.truncated = truncated;
    s.tail_mass = tail_mass;
    return s;
  }

  void validate() const {
    if (ts.empty() || ts.front() != t0)
      throw std::invalid_argument("Subdivision: breakpoints must start at t0");
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
      if (!(ts[k] < ts[k + 1]))
        throw std::invalid_argument("Subdivision: breakpoints must be strictly increasing");
    if (!truncated && ts.back() != 1.0)
      throw std::invalid_argument("Subdivision: must end at 1 unless truncated");
  }
};

// Uniform subdivision t_k = k/N of [0,1].
inline Subdivision uniform_subdivision(long long N) {
  if (N < 1) throw std::domain_error("uniform_subdivision: N must be positive");
  Subdivision s;
  s.t0 = 0.0;
  s.ts.resize(static_cast<std::size_t>(N) + 1);
  for (long long k = 0; k <= N; ++k)
    s.ts[static_cast<std::size_t>(k)] = static_cast<double>(k) / static_cast<double>(N);
  s.ts.back() = 1.0;
  return s;
}

// Discount subdivision t_k = 1 - (1-lambda)^k, cut at the first K with
// (1-lambda)^K <= tail_tol. The increments are pi_k = lambda (1-lambda)^k.
inline Subdivision discount_subdivision(double lambda, double tail_tol) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("discount_subdivision: lambda must lie in (0,1)");
  if (!(tail_tol > 0.0))
    throw std::domain_error("discount_subdivision: tail_tol must be positive");
  Subdivision s;
  s.t0 = 0.0;
  double f = 1.0;  // (1-lambda)^k
  s.ts.push_back(0.0);
  while (f > tail_tol) {
    f *= 1.0 - lambda;
    s.ts.push_back(1.0 - f);
  }
  s.truncated = true;
  s.tail_mass = f;
  return s;
}

// Piecewise-constant control: one mixed move per interval of the grid.
struct PiecewiseControl {
  Subdivision grid;
  std::vector<std::vector<double>> profiles;

  void validate(int actions) const {
    if (profiles.size() != grid.intervals())
      throw std::invalid_argument("PiecewiseControl: one profile per interval required");
    for (const auto& p : profiles)
      if (static_cast<int>(p.size()) != actions || !is_probability_vector(p))
        throw std::invalid_argument("PiecewiseControl: invalid mixed move");
  }
};

// W_P(t0, q0) by backward affine shell propagation. The affine class is
// closed under the one-step operator, so a single (K, c) pair evolves along
// the radius chain s_k = |q0| + (t_k - t0):
//   c_k = pi_k val(A + K_{k+1}) + c_{k+1},
//   K_k = (pi_k / s_k) H + K_{k+1}     (the singular H/s term is skipped at
//                                       s = 0, where h vanishes anyway).
// One matrix-game solve per step.
inline double dpp_backward(const GameSpec& g, const Subdivision& P,
                           const QuotientState& q0) {
  P.validate();
  const double s0 = q0.total();
  Matrix K(g.rows(), g.cols(), 0.0);
  double c = 0.0;
  for (std::size_t k = P.intervals(); k-- > 0;) {
    const double pi = P.increment(k);
    const double s = s0 + (P.ts[k] - P.t0);
    c = pi * val(g.A + K) + c;
    if (s > 0.0) K += (pi / s) * g.H;
  }
  if (!std::isfinite(c) || !K.is_finite())
    throw numeric_error("dpp_backward: non-finite accumulation");
  return inner(K, q0.matrix()) + c;
}

// Psi_N(k/N, q) through the closed-form affine coefficients
// k_{m,s} = Lambda_{N-m}(N s) H (with k_{m,0} = 0 by convention) and the
// constant chain c_{m,s} = (1/N) val(A + k_{m+1,s+1/N}) + c_{m+1,s+1/N}.
// Each step evaluates the harmonic block from scratch, which keeps this an
// algebraically independent route from dpp_backward's running accumulation.
inline double psi_n(const GameSpec& g, long long N, long long k,
                    const QuotientState& q) {
  if (N < 1) throw std::domain_error("psi_n: N must be positive");
  if (k < 0 || k > N) throw std::domain_error("psi_n: k must lie in [0, N]");
  const double s0 = q.total();
  const double dn = static_cast<double>(N);
  double c = 0.0;
  for (long long m = N - 1; m >= k; --m) {
    const double a_next = dn * s0 + static_cast<double>(m + 1 - k);  // N * s_{m+1}
    const double lam = harmonic_lambda(a_next, N - m - 1);
    c = val(g.A + lam * g.H) / dn + c;
  }
  double linear = 0.0;
  if (s0 > 0.0) {
    const Matrix kk = harmonic_lambda(dn * s0, N - k) * g.H;
    linear = inner(kk, q.matrix());
  }
  return linear + c;
}

// W_{P_lambda}(q) within tol, iterating the stationary one-step operator on
// the affine class:
//   c'(s) = lambda val(A + (1-lambda) K(s+lambda)) + (1-lambda) c(s+lambda),
//   K'(s) = (lambda/s) H + (1-lambda) K(s+lambda).
// Truncated after T steps with (1-lambda)^T (max|A|+max|H|) <= tol, which the
// contraction converts into an absolute error <= tol.
inline double theta_fixed_point(const GameSpec& g, double lambda,
                                const QuotientState& q, double tol) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("theta_fixed_point: lambda must lie in (0,1)");
  if (!(tol > 0.0)) throw std::domain_error("theta_fixed_point: tol must be positive");
  const long long T = detail::discount_horizon(lambda, tol, g.payoff_bound());
  const double s0 = q.total();
  Matrix K(g.rows(), g.cols(), 0.0);
  double c = 0.0;
  for (long long j = T - 1; j >= 0; --j) {
    const double s = s0 + static_cast<double>(j) * lambda;
    c = lambda * val(g.A + (1.0 - lambda) * K) + (1.0 - lambda) * c;
    K *= 1.0 - lambda;
    if (s > 0.0) K += (lambda / s) * g.H;
  }
  if (!std::isfinite(c) || !K.is_finite())
    throw numeric_error("theta_fixed_point: non-finite accumulation");
  return inner(K, q.matrix()) + c;
}

struct HamiltonianPair {
  double lower;
  double upper;
};

// Lower and upper Hamiltonians at (xi, q). Both reduce to h(q) + val(A+xi)
// by the minimax theorem; here each side is evaluated through its own
// best-response certificate, so equality of the two is a genuine check of
// the Isaacs condition rather than a restatement.
inline HamiltonianPair hamiltonian(const GameSpec& g, const Matrix& xi,
                                   const QuotientState& q) {
  if (!xi.is_finite())
    throw std::domain_error("hamiltonian: xi must be finite");
  const MatrixGameSolution sol = solve_value(g.A + xi);
  const double h = h_eval(g, q);
  double lo = sol.u_payoffs[0];
  for (double p : sol.u_payoffs) lo = std::min(lo, p);
  double hi = sol.v_payoffs[0];
  for (double p : sol.v_payoffs) hi = std::max(hi, p);
  return {h + lo, h + hi};
}

// Exact payoff G(t, q, u, v) for piecewise-constant controls. On each
// interval the state is affine in time and |q(s)| = |q| + (s - t), so the
// frequency part integrates in closed form:
//   int (alpha + beta (s - t_k)) / |q(s)| ds
//     = beta pi_k + (alpha - beta |q_k|) ln(|q_{k+1}| / |q_k|),
// with alpha = <H, q_k>, beta = <H, u_k (x) v_k>. A segment starting at the
// origin has h constant (= beta) along the ray, covered by its own branch.
inline double trajectory_payoff(const GameSpec& g, double t, const QuotientState& q,
                                const PiecewiseControl& u_ctrl,
                                const PiecewiseControl& v_ctrl) {
  if (!(t >= 0.0 && t < 1.0))
    throw std::domain_error("trajectory_payoff: t must lie in [0,1)");
  if (u_ctrl.grid.ts != v_ctrl.grid.ts)
    throw std::invalid_argument("trajectory_payoff: controls on different subdivisions");
  if (u_ctrl.grid.ts.empty() || u_ctrl.grid.ts.front() != t)
    throw std::invalid_argument("trajectory_payoff: control grid does not start at t");
  u_ctrl.validate(g.rows());
  v_ctrl.validate(g.cols());

  Matrix qc = q.matrix();
  double total = 0.0;
  for (std::size_t k = 0; k < u_ctrl.grid.intervals(); ++k) {
    const double pi = u_ctrl.grid.increment(k);
    const Matrix dir = outer(u_ctrl.profiles[k], v_ctrl.profiles[k]);
    total += pi * inner(dir, g.A);
    const double alpha = inner(g.H, qc);
    const double beta = inner(g.H, dir);
    const double sa = qc.sum();
    if (sa <= 0.0) {
      total += beta * pi;
    } else {
      total += beta * pi + (alpha - beta * sa) * std::log((sa + pi) / sa);
    }
    qc += pi * dir;
  }
  return total;
}

}  // namespace freqval
