#include "l1adm/commands.hpp"

#include "l1adm/config.hpp"
#include "l1adm/io.hpp"
#include "l1adm/rng.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

namespace l1adm {

namespace {

namespace fs = std::filesystem;

fs::path resolve(const fs::path& base_dir, const std::string& name)
{
  fs::path p(name);
  return p.is_absolute() ? p : base_dir / p;
}

OperatorPtr build_operator(const OperatorConfig& c, const fs::path& base_dir)
{
  switch (c.kind) {
  case OperatorKind::Dense: {
    if (c.file.empty()) { throw InvalidParameter("dense operator needs a 'file'"); }
    return std::make_shared<DenseOperator>(read_dense_matrix(resolve(base_dir, c.file), c.rows, c.cols));
  }
  case OperatorKind::PartialWalshHadamard:
  case OperatorKind::PartialDct: {
    if (c.cols < 1) { throw InvalidParameter("transform operator needs 'cols' (n)"); }
    bool const wht = c.kind == OperatorKind::PartialWalshHadamard;
    if (c.row_indices.empty()) {
      if (c.rows < 1) { throw InvalidParameter("transform operator needs 'rows' or 'row_indices'"); }
      if (wht) { return PartialWalshHadamard::random(c.cols, c.rows, c.seed); }
      return PartialDct::random(c.cols, c.rows, c.seed);
    }
    if (c.rows != 0 && c.rows != static_cast<Index>(c.row_indices.size())) {
      throw DimensionMismatch("operator 'rows' does not match the number of row_indices");
    }
    if (wht) { return std::make_shared<PartialWalshHadamard>(c.cols, c.row_indices, c.sign_seed); }
    return std::make_shared<PartialDct>(c.cols, c.row_indices, c.sign_seed);
  }
  case OperatorKind::Augmented: break;
  }
  throw InvalidParameter("operator kind 'augmented' cannot be loaded from a config");
}

void apply_overrides(SolveConfig& c, const SolveOverrides& o)
{
  if (o.model) { c.model.family = model_family_from_string(*o.model); }
  auto set_param = [&](const std::optional<double>& v, ModelFamily implied) {
    if (!v) { return; }
    if (!o.model) { c.model.family = implied; }
    c.model.param = *v;
  };
  set_param(o.mu, ModelFamily::QP);
  set_param(o.delta, ModelFamily::BPDN);
  set_param(o.nu, ModelFamily::L1L1);
  if (o.nonneg) { c.model.nonneg = true; }
  if (o.weights) { c.weights_file = *o.weights; }
  if (o.solver) { c.solver.name = *o.solver; }
  if (o.beta) { c.solver.beta = o.beta; }
  if (o.gamma) { c.solver.gamma = o.gamma; }
  if (o.tau) { c.solver.tau = o.tau; }
  if (o.eps) { c.solver.eps = *o.eps; }
  if (o.max_iter) { c.solver.max_iter = *o.max_iter; }
  if (o.stop) { c.solver.stop = stop_rule_from_string(*o.stop); }
  if (o.seed) {
    c.op.seed = *o.seed;
    c.data.seed = *o.seed;
  }
  if (o.no_step_guard) { c.solver.enforce_step_guard = false; }
}

void write_json(const fs::path& path, const Json& j)
{
  std::ofstream out(path);
  if (!out) { throw IoError("cannot write " + path.string()); }
  out << j.dump(2) << '\n';
}

int solve(const fs::path& config_path, const SolveOverrides& overrides, const fs::path& out_dir,
          std::ostream& out)
{
  Json const raw = load_json_file(config_path);
  SolveConfig config = solve_config_from_json(raw);
  apply_overrides(config, overrides);
  fs::path const base_dir = config_path.parent_path();

  OperatorPtr const a = build_operator(config.op, base_dir);
  CVector b;
  std::optional<CVector> x_true;
  if (config.data.k > 0) {
    x_true = gen_spikes(a->cols(), config.data.k, derive_seed(config.data.seed, 1));
    b = add_noise(a->apply(*x_true), config.data.noise, derive_seed(config.data.seed, 2)).b;
  } else {
    if (config.data.b_file.empty()) { throw InvalidParameter("config.data needs 'b' or a synthetic 'k'"); }
    b = read_vector(resolve(base_dir, config.data.b_file));
    if (!config.data.x_true_file.empty()) { x_true = read_vector(resolve(base_dir, config.data.x_true_file)); }
  }
  require_length(b, a->rows(), "b");
  if (x_true) { require_length(*x_true, a->cols(), "x_true"); }
  if (!config.weights_file.empty()) {
    CVector const w = read_vector(resolve(base_dir, config.weights_file));
    config.model.weights = w.real();
  }
  config.model.validate(a->cols());

  SolverOptions opts;
  opts.beta = config.solver.beta;
  opts.gamma = config.solver.gamma;
  opts.tau = config.solver.tau;
  opts.eps = config.solver.eps;
  opts.max_iter = config.solver.max_iter;
  opts.stop = config.solver.stop;
  opts.enforce_step_guard = config.solver.enforce_step_guard;
  opts.seed = config.op.seed;
  opts.x_true = x_true;

  RunRecord const run = run_named_solver(config.solver.name, config.model, a, b, opts);

  fs::create_directories(out_dir);
  write_vector_binary(out_dir / "x.bin", run.x);
  write_vector_csv(out_dir / "x.csv", run.x);
  Json const effective = to_json(config);
  Json result = to_json(run, true);
  result["config"] = effective;
  result["config_hash"] = config_hash(effective);
  result["seed"] = config.data.seed;
  result["version"] = std::string(kVersion);
  write_json(out_dir / "result.json", result);

  out << run.solver << " " << to_string(run.model.family) << ": " << to_string(run.status) << " after "
      << run.iterations << " iterations (#AAt " << run.aat << "), RelRes " << std::setprecision(3)
      << std::scientific << run.rel_res << ", Res " << run.final.res;
  if (run.final.relerr) { out << ", RelErr " << *run.final.relerr << "%"; }
  out << std::defaultfloat << "\n";
  if (!run.message.empty()) { out << run.message << "\n"; }

  return run.status == RunStatus::Converged ? kExitConverged : kExitNotConverged;
}

int experiment(const std::string& protocol_name, const ExperimentOptions& options, const fs::path& out_dir,
               std::ostream& out, std::ostream& err)
{
  Protocol const protocol = protocol_from_string(protocol_name);
  ExperimentConfig config = default_experiment_config(protocol, options.scale);
  if (options.config) {
    Json j = load_json_file(*options.config);
    if (!j.contains("protocol")) { j["protocol"] = protocol_name; }
    config = experiment_config_from_json(j);
    if (config.protocol != protocol) {
      throw InvalidParameter("config protocol '" + std::string(to_string(config.protocol)) +
                             "' does not match '" + protocol_name + "'");
    }
  }
  if (options.n) { config.n = *options.n; }
  if (options.trials) { config.trials = *options.trials; }
  if (options.seed) { config.seed = *options.seed; }

  Json const config_json = to_json(config);
  std::string const hash = config_hash(config_json);
  fs::path const manifest_path = out_dir / "manifest.json";
  if (fs::exists(manifest_path) && !options.force) {
    Json const previous = load_json_file(manifest_path);
    if (previous.value("config_hash", "") != hash) {
      err << "error: " << out_dir.string() << " holds results of a different config (hash "
          << previous.value("config_hash", "?") << ", now " << hash << "); use --force to overwrite\n";
      return kExitInputError;
    }
  }

  ExperimentResult const result = run_experiment(config);

  fs::create_directories(out_dir);
  write_summary_csv(out_dir / "summary.csv", result.summary, options.timing);
  write_trials_csv(out_dir / "trials.csv", result.trials, options.timing);
  write_curves_csv(out_dir / "curves.csv", result.curves);

  Json manifest;
  manifest["protocol"] = std::string(to_string(protocol));
  manifest["version"] = std::string(kVersion);
  manifest["seed"] = config.seed;
  manifest["config"] = config_json;
  manifest["config_hash"] = hash;
  manifest["files"] = {"summary.csv", "trials.csv", "curves.csv"};
  Json timing = {{"enabled", options.timing}};
  if (options.timing) {
    double total = 0.0;
    for (const auto& t : result.trials) { total += t.seconds; }
    timing["solver_seconds"] = total;
    timing["threads"] = harness_threads();
  }
  manifest["timing"] = timing;
  write_json(manifest_path, manifest);

  out << std::left << std::setw(22) << "cell" << std::setw(8) << "solver" << std::right << std::setw(10)
      << "iter" << std::setw(10) << "#AAt" << std::setw(14) << "RelErr(%)" << std::setw(12) << "Res\n";
  for (const auto& row : result.summary) {
    out << std::left << std::setw(22) << row.cell_id << std::setw(8) << row.solver << std::right << std::fixed
        << std::setprecision(1) << std::setw(10) << row.iter << std::setw(10) << row.aat << std::scientific
        << std::setprecision(3) << std::setw(14) << row.relerr_pct << std::setw(12) << row.res << "\n"
        << std::defaultfloat;
  }
  out << "wrote " << (out_dir / "summary.csv").string() << " (config " << hash << ")\n";
  return kExitConverged;
}

}  // namespace

int cmd_solve(const fs::path& config_path, const SolveOverrides& overrides, const fs::path& out_dir,
              std::ostream& out, std::ostream& err)
{
  try {
    return solve(config_path, overrides, out_dir, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_experiment(const std::string& protocol, const ExperimentOptions& options, const fs::path& out_dir,
                   std::ostream& out, std::ostream& err)
{
  try {
    return experiment(protocol, options, out_dir, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace l1adm
