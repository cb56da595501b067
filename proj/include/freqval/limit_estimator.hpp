#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "freqval/closed_form.hpp"
#include "freqval/discretized_game.hpp"
#include "freqval/parallel.hpp"
#include "freqval/recursion_oracle.hpp"

namespace freqval {

// The eta schedule from the limit-value argument: eta in (0, 1/4) with
//   12 ||H||_inf (ln 2 + C_int) eta        < eps
//   (12 ||H||_inf + 1) eta |ln eta|        < eps,
// where C_int = 0 is the remainder constant once the harmonic block is
// replaced by its integral majorant.
struct EtaSchedule {
  double epsilon;
  double eta;
};

namespace detail {

constexpr double kEtaIntegralConstant = 0.0;  // C_int

inline bool eta_admissible(double hinf, double eps, double eta) {
  const double c1 = 12.0 * hinf * (std::numbers::ln2 + kEtaIntegralConstant) * eta;
  const double c2 = (12.0 * hinf + 1.0) * eta * std::abs(std::log(eta));
  return c1 < eps && c2 < eps;
}

}  // namespace detail

// Largest dyadic eta = 2^-m below 1/4 satisfying both schedule constraints.
// Some eta always exists since eta |ln eta| -> 0.
inline EtaSchedule eta_for(const GameSpec& g, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("eta_for: eps must be positive");
  const double hinf = g.h_norm();
  double eta = 0.125;  // 2^-3, the largest dyadic strictly below 1/4
  while (!detail::eta_admissible(hinf, eps, eta)) eta *= 0.5;
  return {eps, eta};
}

// Estimate of W(0,0): the exact V_N(0), which the limit theorem identifies
// with the differential-game value as N grows.
inline double w00_estimate(const GameSpec& g, long long N,
                           long long cap = 10'000'000) {
  if (N < 2) throw std::domain_error("w00_estimate: N must be at least 2");
  if (N > cap)
    throw resource_error("w00_estimate: N=" + std::to_string(N) +
                         " exceeds cap=" + std::to_string(cap));
  return n_stage_value_origin(g, N);
}

struct ConvergenceRecord {
  std::string family;  // "nstage" or "discounted"
  double parameter;    // N or lambda
  double value;
  double diff;   // |value - previous value| within the family; NaN for the first
  double bound;  // state-independence bound at the configured test state
};

struct ConvergenceReport {
  std::vector<ConvergenceRecord> records;
  bool converged = false;
  double tolerance = 0.0;
  double estimate = 0.0;
};

struct SweepOptions {
  double theta_tol = 1e-6;       // truncation for the discounted family
  double verdict_tol = 1e-2;     // tail agreement demanded for "converged"
  bool richardson = false;       // extrapolate the n-stage tail
  std::optional<StateCount> z_test;  // state for the gap bounds; default e_00
};

// Tabulates V_N(0) over Ns and V_lambda(0) over lambdas (the latter through
// the stationary fixed point at q = 0), with successive differences and the
// payoff-gap bounds for a test state. The verdict compares the two families'
// tail values. Records are ordered by refinement: N increasing, lambda
// decreasing.
inline ConvergenceReport convergence_sweep(const GameSpec& g,
                                           std::vector<long long> Ns,
                                           std::vector<double> lambdas,
                                           const SweepOptions& opt = {}) {
  if (Ns.empty() || lambdas.empty())
    throw std::invalid_argument("convergence_sweep: both parameter lists must be nonempty");
  std::sort(Ns.begin(), Ns.end());
  std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
  const StateCount z =
      opt.z_test ? *opt.z_test : StateCount(g.rows(), g.cols()).bumped(0, 0);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> nvals(Ns.size()), lvals(lambdas.size());
  parallel_for(Ns.size(), [&](std::size_t i) {
    nvals[i] = n_stage_value_origin(g, Ns[i]);
  });
  const QuotientState q0 = QuotientState::zero(g.rows(), g.cols());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    lvals[i] = theta_fixed_point(g, lambdas[i], q0, opt.theta_tol);
  });

  ConvergenceReport rep;
  rep.tolerance = opt.verdict_tol;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    ConvergenceRecord r;
    r.family = "nstage";
    r.parameter = static_cast<double>(Ns[i]);
    r.value = nvals[i];
    r.diff = i == 0 ? nan : std::abs(nvals[i] - nvals[i - 1]);
    r.bound = payoff_gap_bound_n(g, z, Ns[i]);
    rep.records.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    ConvergenceRecord r;
    r.family = "discounted";
    r.parameter = lambdas[i];
    r.value = lvals[i];
    r.diff = i == 0 ? nan : std::abs(lvals[i] - lvals[i - 1]);
    r.bound = lambdas[i] * static_cast<double>(z.total()) < 1.0
                  ? payoff_gap_bound_lambda(g, z, lambdas[i])
                  : nan;
    rep.records.push_back(std::move(r));
  }

  rep.converged = std::abs(nvals.back() - lvals.back()) <= opt.verdict_tol;
  if (opt.richardson && Ns.size() >= 2) {
    // One-step extrapolation assuming a 1/N tail: never asserted against,
    // offered as a refinement only.
    const double n1 = static_cast<double>(Ns[Ns.size() - 2]);
    const double n2 = static_cast<double>(Ns.back());
    rep.estimate =
        (n2 * nvals.back() - n1 * nvals[nvals.size() - 2]) / (n2 - n1);
  } else {
    rep.estimate = nvals.back();
  }
  return rep;
}

}  // namespace freqval
