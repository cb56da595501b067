#pragma once

#include <cmath>
#include <stdexcept>

#include "freqval/game_spec.hpp"

namespace freqval {

// Frequency term h(q) = <H, q/|q|>, with h(0) = 0 by definition.
// Positively homogeneous of degree zero and bounded by max|H_ij|.
inline double h_eval(const GameSpec& g, const QuotientState& q) {
  const double s = q.total();
  if (s <= 0.0) return 0.0;
  return inner(g.H, q.matrix()) / s;
}

// Counting-state view of the same term.
inline double h_eval(const GameSpec& g, const StateCount& z) {
  const long long s = z.total();
  if (s == 0) return 0.0;
  double dot = 0.0;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      dot += g.H(i, j) * static_cast<double>(z.at(i, j));
  return dot / static_cast<double>(s);
}

// Stage payoff g(z_prev, i, j) = a_ij + h(z_prev).
inline double stage_payoff(const GameSpec& g, const StateCount& z_prev, int i, int j) {
  if (i < 0 || i >= g.rows() || j < 0 || j >= g.cols())
    throw std::out_of_range("stage_payoff: action index out of range");
  return g.A(i, j) + h_eval(g, z_prev);
}

// Mean of the first N stage payoffs along the play, states advancing as
// z_t = z_{t-1} + e_{i_t j_t} from z0.
inline double play_payoff_average(const GameSpec& g, const StateCount& z0,
                                  const Play& play, long long N) {
  if (N < 1) throw std::domain_error("play_payoff_average: N must be positive");
  if (static_cast<long long>(play.size()) < N)
    throw std::invalid_argument("play_payoff_average: play shorter than N stages");
  StateCount z = z0;
  double total = 0.0;
  for (long long t = 0; t < N; ++t) {
    const auto [i, j] = play[static_cast<std::size_t>(t)];
    total += stage_payoff(g, z, i, j);
    z.bump(i, j);
  }
  return total / static_cast<double>(N);
}

namespace detail {

// Smallest T with (1-lambda)^T * bound <= tol.
inline long long discount_horizon(double lambda, double tol, double bound) {
  if (bound <= tol) return 0;
  const double t = std::log(tol / bound) / std::log1p(-lambda);
  long long T = static_cast<long long>(std::ceil(t));
  if (T < 0) T = 0;
  while (std::pow(1.0 - lambda, static_cast<double>(T)) * bound > tol) ++T;
  return T;
}

}  // namespace detail

// Truncated discounted payoff sum_t lambda (1-lambda)^{t-1} g_t over the
// provided play. The play must be long enough that the discarded tail is
// below tol; the returned value then carries absolute error <= tol.
inline double play_payoff_discounted(const GameSpec& g, const StateCount& z0,
                                     const Play& play, double lambda, double tol) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::domain_error("play_payoff_discounted: lambda must lie in (0,1)");
  if (!(tol > 0.0))
    throw std::domain_error("play_payoff_discounted: tol must be positive");
  const long long T = detail::discount_horizon(lambda, tol, g.payoff_bound());
  if (static_cast<long long>(play.size()) < T)
    throw std::invalid_argument(
        "play_payoff_discounted: play too short for requested tolerance");
  StateCount z = z0;
  double total = 0.0;
  double w = lambda;
  for (const auto& [i, j] : play) {
    total += w * stage_payoff(g, z, i, j);
    z.bump(i, j);
    w *= 1.0 - lambda;
  }
  return total;
}

}  // namespace freqval
