#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "freqval/closed_form.hpp"
#include "freqval/discretized_game.hpp"
#include "freqval/game_io.hpp"
#include "freqval/limit_estimator.hpp"
#include "freqval/verify.hpp"

namespace freqval::cli {

struct RunConfig {
  enum class Command { value_nstage, value_discounted, value_continuous, sweep, verify };

  Command command = Command::verify;
  std::string spec_path;
  std::optional<long long> N;
  std::optional<double> lambda;
  std::vector<long long> z;   // flat row-major counts; empty means the origin
  std::vector<double> q0;     // flat row-major reals; empty means the origin
  double eps = 1e-2;          // sweep verdict tolerance
  double tol = 1e-6;          // truncation tolerance for discounted values
  std::vector<long long> Ns;
  std::vector<double> lambdas;
  std::string out_path;       // CSV target; empty means no CSV
  OracleLimits limits;        // caps for the brute-force checks in `verify`
};

namespace detail {

inline std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Human tables: 6 significant digits; missing entries as "-".
inline std::string human(double v) {
  if (std::isnan(v)) return "-";
  return fmt(v, "%.6g");
}

// CSV: 17 significant digits (lossless doubles), '.' separator, NaN empty.
inline std::string csv(double v) {
  if (std::isnan(v)) return "";
  return fmt(v, "%.17g");
}

inline void write_csv_rows(const std::vector<ConvergenceRecord>& rows,
                           std::ostream& os) {
  os << "family,parameter,value,diff,bound\n";
  for (const auto& r : rows)
    os << r.family << ',' << csv(r.parameter) << ',' << csv(r.value) << ','
       << csv(r.diff) << ',' << csv(r.bound) << '\n';
}

inline void emit_csv(const RunConfig& cfg, const std::vector<ConvergenceRecord>& rows) {
  if (cfg.out_path.empty()) return;
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + cfg.out_path + "'");
  write_csv_rows(rows, f);
}

inline void kv(std::ostream& out, const std::string& key, const std::string& value) {
  out << key;
  for (std::size_t i = key.size(); i < 12; ++i) out << ' ';
  out << value << "\n";
}

inline StateCount state_from_flags(const GameSpec& g, const std::vector<long long>& z) {
  if (z.empty()) return StateCount(g.rows(), g.cols());
  if (z.size() != static_cast<std::size_t>(g.rows()) * g.cols())
    throw std::domain_error("--z expects rows*cols entries");
  return StateCount(g.rows(), g.cols(), z);
}

inline QuotientState quotient_from_flags(const GameSpec& g, const std::vector<double>& q) {
  if (q.empty()) return QuotientState::zero(g.rows(), g.cols());
  if (q.size() != static_cast<std::size_t>(g.rows()) * g.cols())
    throw std::domain_error("--q0 expects rows*cols entries");
  return QuotientState(g.rows(), g.cols(), q);
}

}  // namespace detail

// Dispatches one parsed command. Prints an aligned table on success and,
// when an output path is set, the CSV rows; identical configs produce
// byte-identical CSV. Any failure prints one diagnostic line on the error
// stream and returns nonzero.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using Command = RunConfig::Command;
  try {
    const GameSpec g = load_game_spec(cfg.spec_path);
    std::vector<ConvergenceRecord> rows;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    switch (cfg.command) {
      case Command::value_nstage: {
        if (!cfg.N) throw std::domain_error("--N is required for value-nstage");
        const StateCount z = detail::state_from_flags(g, cfg.z);
        const double v = z.total() == 0 ? n_stage_value_origin(g, *cfg.N)
                                        : n_stage_value(g, z, *cfg.N);
        detail::kv(out, "command", "value-nstage");
        detail::kv(out, "N", std::to_string(*cfg.N));
        detail::kv(out, "|z|", std::to_string(z.total()));
        detail::kv(out, "value", detail::human(v));
        rows.push_back({"nstage", static_cast<double>(*cfg.N), v, nan, nan});
        break;
      }
      case Command::value_discounted: {
        if (!cfg.lambda) throw std::domain_error("--lambda is required for value-discounted");
        const StateCount z = detail::state_from_flags(g, cfg.z);
        // V_lambda(z) through the affine fixed point at q = lambda z.
        const QuotientState q(*cfg.lambda * z.as_matrix());
        const double v = theta_fixed_point(g, *cfg.lambda, q, cfg.tol);
        detail::kv(out, "command", "value-discounted");
        detail::kv(out, "lambda", detail::human(*cfg.lambda));
        detail::kv(out, "|z|", std::to_string(z.total()));
        detail::kv(out, "value", detail::human(v));
        rows.push_back({"discounted", *cfg.lambda, v, nan, nan});
        break;
      }
      case Command::value_continuous: {
        if (cfg.N.has_value() == cfg.lambda.has_value())
          throw std::domain_error(
              "value-continuous needs exactly one of --N or --lambda");
        const QuotientState q0 = detail::quotient_from_flags(g, cfg.q0);
        double v;
        double parameter;
        if (cfg.N) {
          v = dpp_backward(g, uniform_subdivision(*cfg.N), q0);
          parameter = static_cast<double>(*cfg.N);
        } else {
          v = theta_fixed_point(g, *cfg.lambda, q0, cfg.tol);
          parameter = *cfg.lambda;
        }
        detail::kv(out, "command", "value-continuous");
        detail::kv(out, cfg.N ? "N" : "lambda", detail::human(parameter));
        detail::kv(out, "|q0|", detail::human(q0.total()));
        detail::kv(out, "value", detail::human(v));
        rows.push_back({"continuous", parameter, v, nan, nan});
        break;
      }
      case Command::sweep: {
        if (cfg.Ns.empty() || cfg.lambdas.empty())
          throw std::domain_error("sweep requires nonempty --Ns and --lambdas");
        SweepOptions opt;
        opt.theta_tol = cfg.tol;
        opt.verdict_tol = cfg.eps;
        if (!cfg.z.empty()) opt.z_test = detail::state_from_flags(g, cfg.z);
        const ConvergenceReport rep = convergence_sweep(g, cfg.Ns, cfg.lambdas, opt);
        rows = rep.records;
        out << "family      parameter   value         diff          bound\n";
        for (const auto& r : rep.records) {
          char line[160];
          std::snprintf(line, sizeof line, "%-12s%-12s%-14s%-14s%s\n", r.family.c_str(),
                        detail::human(r.parameter).c_str(), detail::human(r.value).c_str(),
                        detail::human(r.diff).c_str(), detail::human(r.bound).c_str());
          out << line;
        }
        detail::kv(out, "converged", rep.converged ? "yes" : "no");
        detail::kv(out, "estimate", detail::human(rep.estimate));
        break;
      }
      case Command::verify: {
        const VerifySummary s = run_verification(g, out, cfg.limits);
        return s.failed == 0 ? 0 : 1;
      }
    }
    detail::emit_csv(cfg, rows);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace freqval::cli
