#include "l1adm/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
  using namespace l1adm;

  CLI::App app{"l1adm: alternating direction solvers for l1 problems"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "l1adm_out";
  SolveOverrides o;
  auto* solve = app.add_subcommand("solve", "solve one problem described by a JSON config");
  solve->add_option("config", config_path, "problem config (JSON)")->required();
  solve->add_option("--out", out_dir, "output directory");
  solve->add_option("--model", o.model, "bp, bpdn, qp or l1l1");
  solve->add_option("--mu", o.mu, "QP weight (implies --model qp)");
  solve->add_option("--delta", o.delta, "BPDN radius (implies --model bpdn)");
  solve->add_option("--nu", o.nu, "L1L1 weight (implies --model l1l1)");
  solve->add_flag("--nonneg", o.nonneg, "nonnegative model (dadm)");
  solve->add_option("--weights", o.weights, "l1 weight vector file");
  solve->add_option("--solver", o.solver, "padm, dadm, fista or ist");
  solve->add_option("--beta", o.beta);
  solve->add_option("--gamma", o.gamma);
  solve->add_option("--tau", o.tau);
  solve->add_option("--eps", o.eps, "stopping tolerance");
  solve->add_option("--max-iter", o.max_iter);
  solve->add_option("--stop", o.stop, "relchg or res");
  solve->add_option("--seed", o.seed, "seed for random operators and synthetic data");
  solve->add_flag("--no-step-guard", o.no_step_guard, "allow tau*lambda_max + gamma >= 2 in padm");

  std::string protocol;
  std::string experiment_out = "l1adm_experiment";
  ExperimentOptions e;
  bool full = false;
  std::string experiment_config;
  auto* experiment = app.add_subcommand("experiment", "run a benchmark protocol: " + protocol_names());
  experiment->add_option("protocol", protocol, "protocol name")->required();
  auto* desk = experiment->add_flag("--desk", "desk scale: n = 1024, 10 trials (default)");
  experiment->add_flag("--full", full, "full scale: n = 8192, 50 trials")->excludes(desk);
  experiment->add_option("--config", experiment_config, "experiment config (JSON)");
  experiment->add_option("--n", e.n, "signal length");
  experiment->add_option("--trials", e.trials, "trials per cell");
  experiment->add_option("--seed", e.seed, "master seed");
  experiment->add_option("--out", experiment_out, "output directory");
  experiment->add_flag("--timing", e.timing, "record wall-clock seconds");
  experiment->add_flag("--force", e.force, "overwrite results of a different config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int const code = app.exit(err);
    return code == 0 ? 0 : kExitInputError;
  }

  if (solve->parsed()) { return cmd_solve(config_path, o, out_dir, std::cout, std::cerr); }
  e.scale = full ? Scale::Full : Scale::Desk;
  if (!experiment_config.empty()) { e.config = experiment_config; }
  return cmd_experiment(protocol, e, experiment_out, std::cout, std::cerr);
}
