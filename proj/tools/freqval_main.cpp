#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "freqval/cli.hpp"

namespace {

using freqval::cli::RunConfig;

void add_spec_option(CLI::App* sc, RunConfig& cfg) {
  sc->add_option("--spec", cfg.spec_path, "game spec file")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"value solvers for zero-sum frequency-dependent games with separable payoffs"};
  app.require_subcommand(1);

  RunConfig cfg;
  long long max_depth = cfg.limits.max_depth;
  std::size_t max_shell_states = cfg.limits.max_shell_states;

  auto* nstage = app.add_subcommand("value-nstage", "n-stage value V_N(z)");
  add_spec_option(nstage, cfg);
  nstage->add_option("--N", cfg.N, "number of stages")->required();
  nstage->add_option("--z", cfg.z, "initial counts, flat row-major")->delimiter(',');
  nstage->add_option("--out", cfg.out_path, "CSV output path");
  nstage->callback([&] { cfg.command = RunConfig::Command::value_nstage; });

  auto* disc = app.add_subcommand("value-discounted", "discounted value V_lambda(z)");
  add_spec_option(disc, cfg);
  disc->add_option("--lambda", cfg.lambda, "discount factor in (0,1)")->required();
  disc->add_option("--z", cfg.z, "initial counts, flat row-major")->delimiter(',');
  disc->add_option("--tol", cfg.tol, "truncation tolerance");
  disc->add_option("--out", cfg.out_path, "CSV output path");
  disc->callback([&] { cfg.command = RunConfig::Command::value_discounted; });

  auto* cont = app.add_subcommand(
      "value-continuous", "discretized differential-game value W_P(t0,q0)");
  add_spec_option(cont, cfg);
  cont->add_option("--N", cfg.N, "uniform subdivision steps");
  cont->add_option("--lambda", cfg.lambda, "discount-induced subdivision");
  cont->add_option("--q0", cfg.q0, "initial state, flat row-major")->delimiter(',');
  cont->add_option("--tol", cfg.tol, "truncation tolerance");
  cont->add_option("--out", cfg.out_path, "CSV output path");
  cont->callback([&] { cfg.command = RunConfig::Command::value_continuous; });

  auto* sweep = app.add_subcommand("sweep", "convergence sweep over N and lambda");
  add_spec_option(sweep, cfg);
  sweep->add_option("--Ns", cfg.Ns, "stage counts")->delimiter(',')->required();
  sweep->add_option("--lambdas", cfg.lambdas, "discount factors")->delimiter(',')->required();
  sweep->add_option("--z", cfg.z, "test state for the gap bounds")->delimiter(',');
  sweep->add_option("--eps", cfg.eps, "verdict tolerance");
  sweep->add_option("--tol", cfg.tol, "truncation tolerance");
  sweep->add_option("--out", cfg.out_path, "CSV output path");
  sweep->callback([&] { cfg.command = RunConfig::Command::sweep; });

  auto* verify = app.add_subcommand("verify", "run the module property suites");
  add_spec_option(verify, cfg);
  verify->add_option("--max-depth", max_depth, "brute-force recursion depth cap");
  verify->add_option("--max-shell-states", max_shell_states, "brute-force shell size cap");
  verify->callback([&] { cfg.command = RunConfig::Command::verify; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::string msg = e.what();
    if (const auto nl = msg.find('\n'); nl != std::string::npos) msg = msg.substr(0, nl);
    std::cerr << "error: " << msg << "\n";
    return e.get_exit_code();
  }

  cfg.limits.max_depth = static_cast<int>(max_depth);
  cfg.limits.max_shell_states = max_shell_states;
  return freqval::cli::run(cfg, std::cout, std::cerr);
}
