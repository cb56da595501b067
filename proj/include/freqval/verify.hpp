#pragma once

#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "freqval/closed_form.hpp"
#include "freqval/discretized_game.hpp"
#include "freqval/game_core.hpp"
#include "freqval/limit_estimator.hpp"
#include "freqval/matrix_game.hpp"
#include "freqval/recursion_oracle.hpp"

namespace freqval {

struct VerifySummary {
  int passed = 0;
  int failed = 0;
};

namespace detail {

class Verifier {
 public:
  void check(const std::string& module, const std::string& name, bool ok) {
    auto& [p, f] = counts_[module];
    if (ok)
      ++p;
    else {
      ++f;
      failures_.push_back(module + ": " + name);
    }
  }

  VerifySummary report(std::ostream& out) const {
    VerifySummary total;
    for (const auto& [module, pf] : counts_) {
      out << std::left << std::setw(20) << module << pf.first << " passed, "
          << pf.second << " failed\n";
      total.passed += pf.first;
      total.failed += pf.second;
    }
    out << std::left << std::setw(20) << "total" << total.passed << " passed, "
        << total.failed << " failed\n";
    for (const auto& f : failures_) out << "FAILED " << f << "\n";
    return total;
  }

 private:
  std::map<std::string, std::pair<int, int>> counts_;
  std::vector<std::string> failures_;
};

struct VerifyRng {
  std::mt19937_64 gen{0x5eedf00dULL};

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  }
  Matrix matrix(int r, int c, double lo, double hi) {
    Matrix m(r, c);
    for (double& x : m.data()) x = uniform(lo, hi);
    return m;
  }
  std::vector<double> simplex_point(int n) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double s = 0.0;
    for (double& x : p) {
      x = -std::log(uniform(1e-12, 1.0));
      s += x;
    }
    for (double& x : p) x /= s;
    return p;
  }
  Play random_play(int rows, int cols, int len) {
    Play p;
    p.reserve(static_cast<std::size_t>(len));
    for (int t = 0; t < len; ++t)
      p.emplace_back(uniform_int(0, rows - 1), uniform_int(0, cols - 1));
    return p;
  }
  StateCount random_state(int rows, int cols, int total) {
    StateCount z(rows, cols);
    for (int t = 0; t < total; ++t)
      z.bump(uniform_int(0, rows - 1), uniform_int(0, cols - 1));
    return z;
  }
};

inline void verify_game_core(const GameSpec& g, Verifier& v, VerifyRng& rng) {
  const int R = g.rows(), C = g.cols();
  bool homogeneous = true, bounded = true;
  for (int s = 0; s < 100; ++s) {
    Matrix m = rng.matrix(R, C, 0.0, 1.0);
    m(0, 0) += 0.1;  // keep |q| > 0
    const QuotientState q(m);
    const double h = h_eval(g, q);
    bounded = bounded && std::abs(h) <= g.h_norm() + 1e-12;
    for (double c : {0.5, 2.0, 17.0})
      homogeneous = homogeneous && std::abs(h_eval(g, q.scaled(c)) - h) <= 1e-12;
  }
  v.check("game_core", "h scale invariance", homogeneous);
  v.check("game_core", "h bounded by sup|H|", bounded);

  bool shift_avg = true, shift_disc = true, zero_h = true;
  const GameSpec shifted(g.A.shifted(2.5), g.H);
  const GameSpec no_freq(g.A, Matrix(R, C, 0.0));
  for (int s = 0; s < 20; ++s) {
    const Play play = rng.random_play(R, C, 400);
    const StateCount z0 = rng.random_state(R, C, rng.uniform_int(0, 3));
    const double base = play_payoff_average(g, z0, play, 40);
    shift_avg = shift_avg &&
                std::abs(play_payoff_average(shifted, z0, play, 40) - base - 2.5) <= 1e-12;
    const double d0 = play_payoff_discounted(g, z0, play, 0.2, 1e-10);
    const double d1 = play_payoff_discounted(shifted, z0, play, 0.2, 1e-10);
    shift_disc = shift_disc && std::abs(d1 - d0 - 2.5) <= 1e-8;
    double plain = 0.0;
    for (int t = 0; t < 40; ++t) plain += g.A(play[t].first, play[t].second);
    zero_h = zero_h &&
             std::abs(play_payoff_average(no_freq, z0, play, 40) - plain / 40.0) <= 1e-12;
  }
  v.check("game_core", "average shift covariance", shift_avg);
  v.check("game_core", "discounted shift covariance", shift_disc);
  v.check("game_core", "zero H reduces to plain average", zero_h);
}

inline void verify_matrix_game(Verifier& v, VerifyRng& rng) {
  bool cert = true, shift = true, swap = true, nonexp = true, mono = true;
  for (int s = 0; s < 200; ++s) {
    const int r = rng.uniform_int(1, 4), c = rng.uniform_int(1, 4);
    const Matrix M = rng.matrix(r, c, -3.0, 3.0);
    const MatrixGameSolution sol = solve_value(M);
    cert = cert && sol.certificate_gap() <= 1e-9 * (1.0 + M.max_abs());
    if (s < 100) {
      const double cc = rng.uniform(-2.0, 2.0);
      shift = shift && std::abs(val(M.shifted(cc)) - sol.value - cc) <= 1e-9;
      swap = swap && std::abs(val(-1.0 * M.transposed()) + sol.value) <= 1e-9;
      Matrix P = rng.matrix(r, c, -0.5, 0.5);
      nonexp = nonexp && std::abs(val(M + P) - sol.value) <= P.max_abs() + 2e-9;
      for (double& x : P.data()) x = std::abs(x);
      mono = mono && val(M + P) >= sol.value - 1e-9;
    }
  }
  v.check("matrix_game", "saddle certificate", cert);
  v.check("matrix_game", "shift covariance", shift);
  v.check("matrix_game", "role-swap antisymmetry", swap);
  v.check("matrix_game", "nonexpansiveness", nonexp);
  v.check("matrix_game", "entrywise monotonicity", mono);
}

inline void verify_closed_form(const GameSpec& g, Verifier& v, VerifyRng& rng,
                               const OracleLimits& lim) {
  bool rec = true;
  for (int m = 1; m <= 40; ++m)
    for (int t = 1; t <= 40; ++t)
      rec = rec && std::abs(harmonic_lambda(t, m + 1) - harmonic_lambda(t + 1, m) -
                            1.0 / t) <= 1e-12;
  v.check("closed_form", "harmonic recurrence", rec);

  const int R = g.rows(), C = g.cols();
  if (R * C >= 2) {
    // V affine on a shell: V(z1) + V(z2) = V(z3) + V(z4) when z1+z2 = z3+z4.
    StateCount z1(R, C), z2(R, C), z3(R, C), z4(R, C);
    const int i2 = (R > 1) ? 1 : 0, j2 = (C > 1) ? 1 : 0;
    z1.bump(0, 0); z1.bump(0, 0);
    z2.bump(i2, j2); z2.bump(i2, j2);
    z3.bump(0, 0); z3.bump(i2, j2);
    z4 = z3;
    bool affine = true;
    for (long long n : {1, 3, 5})
      affine = affine && std::abs(n_stage_value(g, z1, n) + n_stage_value(g, z2, n) -
                                  n_stage_value(g, z3, n) - n_stage_value(g, z4, n)) <= 1e-9;
    v.check("closed_form", "affine on shells", affine);
  }

  if (R * C <= 4) {
    bool oracle = true;
    for (int n = 1; n <= 4; ++n) {
      oracle = oracle && std::abs(n_stage_value_origin(g, n) -
                                  shapley_value_exact(g, StateCount(R, C), n, lim)) <= 1e-9;
      for (int s = 0; s < 4; ++s) {
        const StateCount z = rng.random_state(R, C, rng.uniform_int(1, 2));
        oracle = oracle &&
                 std::abs(n_stage_value(g, z, n) - shapley_value_exact(g, z, n, lim)) <= 1e-9;
      }
    }
    v.check("closed_form", "matches brute-force recursion", oracle);
  }
}

inline void verify_recursion_oracle(const GameSpec& g, Verifier& v, VerifyRng& rng,
                                    const OracleLimits& lim) {
  const int R = g.rows(), C = g.cols();
  if (R * C <= 4) {
    // One-step residual of the Shapley recursion at the root.
    const StateCount z0(R, C);
    const int n = 3;
    Matrix B = g.A;
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < C; ++j)
        B(i, j) += static_cast<double>(n - 1) *
                   shapley_value_exact(g, z0.bumped(i, j), n - 1, lim);
    const double lhs = static_cast<double>(n) * shapley_value_exact(g, z0, n, lim);
    const double rhs = h_eval(g, z0) + val(B);
    v.check("recursion_oracle", "one-step recursion residual", std::abs(lhs - rhs) <= 1e-9);

    // Successive truncations of the discounted operator sit under each other's
    // contraction envelope: max over a shell-closed sample set.
    const double lambda = 0.3;
    bool contracts = true;
    for (long long T = 2; T <= 5; ++T) {
      double lhs_max = 0.0, rhs_max = 0.0;
      for (int tot = 0; tot <= 3; ++tot) {
        for (int s = 0; s < 6; ++s) {
          const StateCount z = rng.random_state(R, C, tot);
          const double d2 = detail::discounted_truncated(g, z, lambda, T + 1, lim) -
                            detail::discounted_truncated(g, z, lambda, T, lim);
          const double d1 = detail::discounted_truncated(g, z, lambda, T, lim) -
                            detail::discounted_truncated(g, z, lambda, T - 1, lim);
          if (tot <= 2) lhs_max = std::max(lhs_max, std::abs(d2));
          rhs_max = std::max(rhs_max, std::abs(d1));
        }
      }
      contracts = contracts && lhs_max <= (1.0 - lambda) * rhs_max + 1e-12;
    }
    v.check("recursion_oracle", "discounted iteration contracts", contracts);
  }

  bool dom_n = true, dom_l = true;
  const StateCount origin(R, C);
  for (int s = 0; s < 200; ++s) {
    const StateCount z = rng.random_state(R, C, rng.uniform_int(1, 3));
    const Play play = rng.random_play(R, C, 600);
    const long long N = 50;
    const double gap = std::abs(play_payoff_average(g, z, play, N) -
                                play_payoff_average(g, origin, play, N));
    dom_n = dom_n && gap <= payoff_gap_bound_n(g, z, N) + 1e-12;
    const double lambda = 0.08;
    const double gl = std::abs(play_payoff_discounted(g, z, play, lambda, 1e-10) -
                               play_payoff_discounted(g, origin, play, lambda, 1e-10));
    dom_l = dom_l && gl <= payoff_gap_bound_lambda(g, z, lambda) + 1e-9;
  }
  v.check("recursion_oracle", "n-stage gap bound dominates plays", dom_n);
  v.check("recursion_oracle", "discounted gap bound dominates plays", dom_l);
}

inline void verify_discretized_game(const GameSpec& g, Verifier& v, VerifyRng& rng) {
  const int R = g.rows(), C = g.cols();

  const Subdivision pu = uniform_subdivision(16);
  bool grids = pu.ts.front() == 0.0 && pu.ts.back() == 1.0 &&
               std::abs(pu.mesh() - 1.0 / 16.0) <= 1e-15;
  const Subdivision pl = discount_subdivision(0.25, 1e-8);
  grids = grids && pl.truncated && std::abs(pl.mesh() - 0.25) <= 1e-15;
  for (std::size_t k = 0; k + 1 < pl.ts.size() && k < 6; ++k)
    grids = grids &&
            std::abs(pl.increment(k) - 0.25 * std::pow(0.75, static_cast<double>(k))) <= 1e-12;
  v.check("discretized_game", "subdivision construction", grids);

  bool coincide = true;
  const long long N = 40;
  const Subdivision pn = uniform_subdivision(N);
  for (long long k : {0ll, 20ll}) {
    for (int s = 0; s < 3; ++s) {
      Matrix m = rng.matrix(R, C, 0.0, 1.0);
      const QuotientState q(m);
      coincide = coincide &&
                 std::abs(psi_n(g, N, k, q) -
                          dpp_backward(g, pn.suffix(static_cast<std::size_t>(k)), q)) <= 1e-10;
    }
    const QuotientState zero = QuotientState::zero(R, C);
    coincide = coincide &&
               std::abs(psi_n(g, N, k, zero) -
                        dpp_backward(g, pn.suffix(static_cast<std::size_t>(k)), zero)) <= 1e-10;
  }
  v.check("discretized_game", "psi matches uniform backward propagation", coincide);

  bool stationary = true;
  {
    const double lambda = 0.3, tol = 1e-10;
    const Subdivision pd = discount_subdivision(lambda, 1e-12);
    for (int s = 0; s < 3; ++s) {
      Matrix m = rng.matrix(R, C, 0.0, 0.5);
      if (s == 0) m *= 0.0;
      const QuotientState q(m);
      const double gap = std::abs(theta_fixed_point(g, lambda, q, tol) -
                                  dpp_backward(g, pd, q));
      stationary = stationary && gap <= tol + pd.payoff_tail_bound(g) + 1e-10;
    }
  }
  v.check("discretized_game", "stationary fixed point matches discount DPP", stationary);

  bool isaacs = true;
  for (int s = 0; s < 100; ++s) {
    const Matrix xi = rng.matrix(R, C, -3.0, 3.0);
    Matrix m = rng.matrix(R, C, 0.0, 1.0);
    const auto [lo, hi] = hamiltonian(g, xi, QuotientState(m));
    isaacs = isaacs && std::abs(hi - lo) <= 1e-9;
  }
  v.check("discretized_game", "Isaacs condition", isaacs);

  {
    Subdivision terminal;
    terminal.t0 = 1.0;
    terminal.ts = {1.0};
    terminal.truncated = true;
    const QuotientState q = QuotientState::zero(R, C);
    v.check("discretized_game", "terminal condition",
            dpp_backward(g, terminal, q) == 0.0 && psi_n(g, 8, 8, q) == 0.0);
  }

  // Payoff gap between trajectories started at q and at 0, against the
  // 4 sup|H| |q| |ln|q|| envelope valid for |q| < 1/4.
  bool lemma2 = true;
  const double qnorm = 0.05;
  const Subdivision grid8 = uniform_subdivision(8);
  for (int s = 0; s < 50; ++s) {
    PiecewiseControl uc{grid8, {}}, vc{grid8, {}};
    for (std::size_t k = 0; k < grid8.intervals(); ++k) {
      uc.profiles.push_back(rng.simplex_point(R));
      vc.profiles.push_back(rng.simplex_point(C));
    }
    Matrix m(R, C, 0.0);
    m(0, 0) = qnorm;
    const double gq = trajectory_payoff(g, 0.0, QuotientState(m), uc, vc);
    const double g0 = trajectory_payoff(g, 0.0, QuotientState::zero(R, C), uc, vc);
    lemma2 = lemma2 &&
             std::abs(gq - g0) <= 4.0 * g.h_norm() * qnorm * std::abs(std::log(qnorm)) + 1e-12;
  }
  v.check("discretized_game", "origin payoff gap envelope", lemma2);
}

inline void verify_limit_estimator(const GameSpec& g, Verifier& v, VerifyRng&) {
  bool eta_ok = true;
  double prev = 1.0;
  for (double eps : {1.0, 0.3, 0.1, 0.03}) {
    const EtaSchedule sch = eta_for(g, eps);
    eta_ok = eta_ok && sch.eta > 0.0 && sch.eta < 0.25 &&
             detail::eta_admissible(g.h_norm(), eps, sch.eta) && sch.eta <= prev;
    prev = sch.eta;
  }
  v.check("limit_estimator", "eta schedule admissible and monotone", eta_ok);

  const ConvergenceReport rep =
      convergence_sweep(g, {16, 64, 256}, {0.25, 0.06, 0.015});
  bool structure = rep.records.size() == 6 && std::isfinite(rep.estimate);
  for (std::size_t i = 1; i < 3; ++i)
    structure = structure &&
                std::abs(rep.records[i].diff -
                         std::abs(rep.records[i].value - rep.records[i - 1].value)) <= 1e-15;
  v.check("limit_estimator", "sweep report structure", structure);

  // Origin estimate against the discretized game started eta away from 0.
  const double eps = 0.5;
  const EtaSchedule sch = eta_for(g, eps);
  Matrix m(g.rows(), g.cols(), 0.0);
  m(0, 0) = sch.eta;
  const double west = w00_estimate(g, 256);
  const double wdet = dpp_backward(g, uniform_subdivision(256), QuotientState(m));
  v.check("limit_estimator", "origin estimate consistent with discretized start",
          std::abs(west - wdet) <= eps);
}

}  // namespace detail

// Runs the per-module property suites against the loaded game and prints
// pass/fail counts per module. Deterministic: fixed seeds throughout.
inline VerifySummary run_verification(const GameSpec& g, std::ostream& out,
                                      const OracleLimits& lim = {}) {
  detail::Verifier v;
  detail::VerifyRng rng;
  detail::verify_game_core(g, v, rng);
  detail::verify_matrix_game(v, rng);
  detail::verify_closed_form(g, v, rng, lim);
  detail::verify_recursion_oracle(g, v, rng, lim);
  detail::verify_discretized_game(g, v, rng);
  detail::verify_limit_estimator(g, v, rng);
  return v.report(out);
}

}  // namespace freqval
