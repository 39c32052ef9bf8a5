#include "l1adm/protocols.hpp"

#include "l1adm/baselines.hpp"
#include "l1adm/dadm.hpp"
#include "l1adm/padm.hpp"
#include "l1adm/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace l1adm {

namespace {

constexpr std::pair<Protocol, std::string_view> kProtocolNames[] = {
    {Protocol::ModelChoice, "model-choice"}, {Protocol::ErrVsOpt, "err-vs-opt"},
    {Protocol::RaceQp, "race-qp"},           {Protocol::RaceBpdn, "race-bpdn"},
    {Protocol::RaceBp, "race-bp"},
};

// Runs body(i) for i in [0, count) on harness_threads() workers. Results
// must be written to slots indexed by i so the reduce order is fixed.
template <class Body>
void parallel_for(int count, Body&& body)
{
  int const workers = std::min(harness_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) { body(i); }
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) { failure = std::current_exception(); }
        }
      }
    });
  }
  for (auto& t : pool) { t.join(); }
  if (failure) { std::rethrow_exception(failure); }
}

std::string format_number(double v)
{
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string race_cell_id(const RaceCell& cell)
{
  return "m" + format_number(cell.m_ratio) + "_k" + format_number(cell.k_ratio);
}

Index ratio_count(double ratio, Index total)
{
  return std::max<Index>(1, static_cast<Index>(std::llround(ratio * static_cast<double>(total))));
}

std::string solver_label(const std::string& name)
{
  std::string label = name;
  std::transform(label.begin(), label.end(), label.begin(), [](unsigned char c) { return std::toupper(c); });
  return label;
}

TrialRecord make_trial_record(std::string cell_id, int trial, std::uint64_t seed, const RunRecord& run)
{
  TrialRecord rec;
  rec.cell_id = std::move(cell_id);
  rec.trial = trial;
  rec.seed = seed;
  rec.solver = run.solver;
  rec.status = std::string(to_string(run.status));
  rec.iterations = run.iterations;
  rec.aat = run.aat;
  rec.relerr_pct = run.final.relerr.value_or(std::numeric_limits<double>::quiet_NaN());
  rec.res = run.final.res;
  rec.rel_res = run.rel_res;
  rec.objective = run.final.objective;
  rec.seconds = run.seconds;
  return rec;
}

// Trajectory of one run as (objective, relerr, res) per iteration 0..iters,
// padded with the last value when the run stopped early.
struct Trajectory {
  std::vector<double> objective;
  std::vector<double> relerr;
  std::vector<double> res;
};

Trajectory trajectory_of(const RunRecord& run, const Diagnostics& start, int iters)
{
  Trajectory t;
  auto push = [&](double obj, double err, double res) {
    t.objective.push_back(obj);
    t.relerr.push_back(err);
    t.res.push_back(res);
  };
  push(start.objective, start.relerr.value_or(0.0), start.res);
  for (const auto& row : run.history) { push(row.objective, row.relerr.value_or(0.0), row.res); }
  while (static_cast<int>(t.objective.size()) <= iters) {
    push(t.objective.back(), t.relerr.back(), t.res.back());
  }
  return t;
}

void append_mean_curve(std::vector<CurveRow>& out, const std::string& cell_id, const std::string& solver,
                       const std::vector<Trajectory>& runs, int iters)
{
  if (runs.empty()) { return; }
  double const count = static_cast<double>(runs.size());
  for (int k = 0; k <= iters; ++k) {
    CurveRow row;
    row.cell_id = cell_id;
    row.solver = solver;
    row.iter = k;
    for (const auto& t : runs) {
      auto const i = static_cast<std::size_t>(k);
      row.objective += t.objective[i];
      row.relerr_pct += t.relerr[i];
      row.res += t.res[i];
    }
    row.objective /= count;
    row.relerr_pct /= count;
    row.res /= count;
    out.push_back(row);
  }
}

// Diagnostics of the starting point, for iteration 0 of a curve.
Diagnostics start_diagnostics(const ModelSpec& model, const SensingOperator& a, const CVector& b,
                              const CVector& x0, const CVector& x_true)
{
  CVector const ax = a.apply(x0);
  Diagnostics d;
  if (model.family != ModelFamily::L1L1) {
    CVector const y = CVector::Zero(b.size());
    CVector const z = CVector::Zero(x0.size());
    CVector const aty = CVector::Zero(x0.size());
    d = compute_res(model, ResidualInputs{x0, y, z, ax, aty, b});
  }
  d.objective = model_objective(model, x0, ax, b);
  d.relerr = relerr(x0, x_true);
  return d;
}

void require_trials(const ExperimentConfig& config)
{
  if (config.trials < 1) { throw InvalidParameter("experiment needs trials >= 1"); }
  if (config.n < 2) { throw InvalidParameter("experiment needs n >= 2"); }
  if (!(config.eps > 0.0) || config.max_iter < 1) { throw InvalidParameter("experiment needs eps > 0, max_iter >= 1"); }
}

std::string csv_number(double v)
{
  if (std::isnan(v)) { return "nan"; }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_csv(const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) { throw IoError("cannot write " + path.string()); }
  return out;
}

}  // namespace

std::string_view to_string(Protocol protocol)
{
  for (const auto& [p, name] : kProtocolNames) {
    if (p == protocol) { return name; }
  }
  return "unknown";
}

Protocol protocol_from_string(std::string_view name)
{
  for (const auto& [p, known] : kProtocolNames) {
    if (known == name) { return p; }
  }
  throw InvalidParameter("unknown protocol '" + std::string(name) + "'; valid protocols: " + protocol_names());
}

std::string protocol_names()
{
  std::string names;
  for (const auto& [p, name] : kProtocolNames) {
    if (!names.empty()) { names += ", "; }
    names += name;
  }
  return names;
}

ExperimentConfig default_experiment_config(Protocol protocol, Scale scale)
{
  bool const full = scale == Scale::Full;
  ExperimentConfig c;
  c.protocol = protocol;
  c.trials = full ? 50 : 10;
  c.n = full ? 8192 : 1024;
  std::vector<RaceCell> const table_cells = {{0.3, 0.1}, {0.3, 0.2}, {0.2, 0.1},
                                             {0.2, 0.2}, {0.1, 0.1}, {0.1, 0.2}};
  switch (protocol) {
  case Protocol::RaceQp:
    c.cells = table_cells;
    c.solvers = {"padm", "dadm"};
    c.curve_solvers = {"ist", "fista", "dadm"};
    c.curve_iters = full ? 1000 : 500;
    c.sigma = 1e-3;
    c.mu = 1e-4;
    c.eps = 5e-4;
    c.max_iter = 3000;
    break;
  case Protocol::RaceBpdn:
    c.cells = table_cells;
    c.solvers = {"padm", "dadm"};
    c.curve_solvers = {"padm", "dadm"};
    c.curve_iters = 200;
    c.sigma = 1e-3;
    c.eps = 5e-4;
    c.max_iter = 3000;
    break;
  case Protocol::RaceBp:
    c.cells = {table_cells.begin(), table_cells.end() - 1};
    c.solvers = {"dadm", "padm"};
    c.sigma = 0.0;
    c.eps = 1e-6;
    c.max_iter = 20000;
    break;
  case Protocol::ModelChoice:
    c.n = 1000;
    c.m = 300;
    c.k = 60;
    c.op_kind = OperatorKind::Dense;
    c.models = {"bpdn", "qp", "l1l1"};
    for (int i = 0; i <= 20; ++i) { c.params.push_back(i / 20.0); }
    c.noise.impulse_fraction = 0.05;
    c.eps = 1e-5;
    c.max_iter = 5000;
    break;
  case Protocol::ErrVsOpt:
    c.trials = full ? 10 : 1;
    c.n = 1000;
    c.m = 330;
    c.k = 60;
    c.op_kind = OperatorKind::Dense;
    c.cases = {{"noiseless", ModelFamily::BP, 0.0, std::nullopt},
               {"snr40", ModelFamily::QP, 1e-3, 40.0},
               {"snr20", ModelFamily::QP, 1e-2, 20.0}};
    c.eps = std::numeric_limits<double>::min();
    c.max_iter = 500;
    break;
  }
  return c;
}

int harness_threads()
{
  if (const char* env = std::getenv("L1ADM_THREADS")) {
    int const n = std::atoi(env);
    if (n >= 1) { return n; }
  }
  return 1;
}

ExperimentResult run_solver_race(const ExperimentConfig& config)
{
  require_trials(config);
  if (config.cells.empty()) { throw InvalidParameter("solver race needs at least one cell"); }
  bool const qp = config.protocol == Protocol::RaceQp;
  bool const bpdn = config.protocol == Protocol::RaceBpdn;
  if (!qp && !bpdn && config.protocol != Protocol::RaceBp) {
    throw InvalidParameter("run_solver_race: not a race protocol");
  }

  ExperimentResult result;
  for (std::size_t ci = 0; ci < config.cells.size(); ++ci) {
    const RaceCell& cell = config.cells[ci];
    std::string const cell_id = race_cell_id(cell);
    Index const m = ratio_count(cell.m_ratio, config.n);
    Index const k = ratio_count(cell.k_ratio, m);

    std::vector<std::vector<TrialRecord>> per_trial(static_cast<std::size_t>(config.trials));
    std::vector<std::vector<Trajectory>> curves(static_cast<std::size_t>(config.trials));

    parallel_for(config.trials, [&](int t) {
      std::uint64_t const seed = derive_seed(config.seed, ci * 1000003 + static_cast<std::uint64_t>(t));
      NoiseSpec noise;
      noise.sigma = config.sigma;
      ProblemInstance const inst = make_instance(config.op_kind, config.n, m, k, noise, seed);
      ModelSpec const model = qp     ? ModelSpec::qp(config.mu)
                              : bpdn ? ModelSpec::bpdn(inst.p_white.norm())
                                     : ModelSpec::bp();

      SolverOptions opts;
      opts.eps = config.eps;
      opts.max_iter = config.max_iter;
      opts.x_true = inst.x_true;
      opts.record_history = false;
      opts.track_residuals = false;
      if (inst.a->orthonormal_rows()) { opts.lambda_max = 1.0; }

      auto& records = per_trial[static_cast<std::size_t>(t)];
      for (const auto& name : config.solvers) {
        RunRecord const run = run_named_solver(name, model, inst.a, inst.b, opts);
        records.push_back(make_trial_record(cell_id, t, seed, run));
      }

      if (config.curve_iters > 0) {
        SolverOptions copts = opts;
        copts.eps = std::numeric_limits<double>::min();
        copts.max_iter = config.curve_iters;
        copts.record_history = true;
        copts.track_residuals = true;
        CVector const x0 = qp ? inst.a->apply_adjoint(inst.b) : CVector::Zero(config.n);
        if (qp) { copts.x0 = x0; }
        Diagnostics const start = start_diagnostics(model, *inst.a, inst.b, x0, inst.x_true);
        for (const auto& name : config.curve_solvers) {
          RunRecord const run = run_named_solver(name, model, inst.a, inst.b, copts);
          curves[static_cast<std::size_t>(t)].push_back(trajectory_of(run, start, config.curve_iters));
        }
      }
    });

    for (auto& records : per_trial) {
      result.trials.insert(result.trials.end(), records.begin(), records.end());
    }
    for (std::size_t si = 0; si < config.curve_solvers.size() && config.curve_iters > 0; ++si) {
      std::vector<Trajectory> runs;
      for (const auto& trial_curves : curves) { runs.push_back(trial_curves[si]); }
      append_mean_curve(result.curves, cell_id, solver_label(config.curve_solvers[si]), runs,
                        config.curve_iters);
    }
  }
  result.summary = aggregate(result.trials);
  return result;
}

RunRecord run_named_solver(const std::string& name, const ModelSpec& model, const OperatorPtr& a,
                           const CVector& b, const SolverOptions& opts)
{
  if (name == "padm") { return padm_solve(model, *a, b, opts); }
  if (name == "dadm") { return dadm_solve(model, a, b, opts); }
  if (name == "fista") { return fista_solve(model, *a, b, opts); }
  if (name == "ist") { return ist_solve(model, *a, b, opts); }
  throw InvalidParameter("unknown solver '" + name + "' (expected padm, dadm, fista or ist)");
}

ExperimentResult run_model_choice_sweep(const ExperimentConfig& config)
{
  require_trials(config);
  if (config.models.empty() || config.params.empty()) {
    throw InvalidParameter("model-choice sweep needs models and parameter values");
  }
  for (double p : config.params) {
    if (!(p >= 0.0)) { throw InvalidParameter("model-choice parameters must be >= 0"); }
  }

  std::vector<std::vector<TrialRecord>> per_trial(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, [&](int t) {
    std::uint64_t const seed = derive_seed(config.seed, static_cast<std::uint64_t>(t));
    ProblemInstance const inst = make_instance(config.op_kind, config.n, config.m, config.k, config.noise, seed);
    SolverOptions opts;
    opts.eps = config.eps;
    opts.max_iter = config.max_iter;
    opts.x_true = inst.x_true;
    opts.record_history = false;
    auto& records = per_trial[static_cast<std::size_t>(t)];
    for (const auto& name : config.models) {
      ModelFamily const family = model_family_from_string(name);
      for (double p : config.params) {
        // parameter 0 reduces every model to BP
        ModelSpec model;
        if (p > 0.0) { model = ModelSpec{family, false, {}, p}; }
        RunRecord const run = dadm_solve(model, inst.a, inst.b, opts);
        records.push_back(make_trial_record(std::string(to_string(family)) + ":" + format_number(p), t, seed, run));
      }
    }
  });

  ExperimentResult result;
  for (auto& records : per_trial) { result.trials.insert(result.trials.end(), records.begin(), records.end()); }
  result.summary = aggregate(result.trials);
  return result;
}

ExperimentResult run_error_vs_optimality(const ExperimentConfig& config)
{
  require_trials(config);
  if (config.cases.empty()) { throw InvalidParameter("error-vs-optimality needs at least one case"); }

  ExperimentResult result;
  for (std::size_t ci = 0; ci < config.cases.size(); ++ci) {
    const EvoCase& c = config.cases[ci];
    std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
    std::vector<Trajectory> curves(static_cast<std::size_t>(config.trials));
    parallel_for(config.trials, [&](int t) {
      std::uint64_t const seed = derive_seed(config.seed, ci * 1000003 + static_cast<std::uint64_t>(t));
      NoiseSpec noise;
      noise.snr_db = c.snr_db;
      ProblemInstance const inst = make_instance(config.op_kind, config.n, config.m, config.k, noise, seed);
      ModelSpec const model = c.family == ModelFamily::QP ? ModelSpec::qp(c.mu) : ModelSpec::bp();
      SolverOptions opts;
      opts.stop = StopRule::Res;
      opts.eps = config.eps;
      opts.max_iter = config.max_iter;
      opts.x_true = inst.x_true;
      RunRecord const run = dadm_solve(model, inst.a, inst.b, opts);
      CVector const x0 = CVector::Zero(config.n);
      Diagnostics const start = start_diagnostics(model, *inst.a, inst.b, x0, inst.x_true);
      records[static_cast<std::size_t>(t)] = make_trial_record(c.name, t, seed, run);
      curves[static_cast<std::size_t>(t)] = trajectory_of(run, start, config.max_iter);
    });
    result.trials.insert(result.trials.end(), records.begin(), records.end());
    append_mean_curve(result.curves, c.name, "DADM", curves, config.max_iter);
  }
  result.summary = aggregate(result.trials);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
  switch (config.protocol) {
  case Protocol::ModelChoice: return run_model_choice_sweep(config);
  case Protocol::ErrVsOpt: return run_error_vs_optimality(config);
  default: return run_solver_race(config);
  }
}

std::vector<SummaryRow> aggregate(const std::vector<TrialRecord>& trials)
{
  std::vector<SummaryRow> rows;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (const auto& t : trials) {
    auto const key = std::make_pair(t.cell_id, t.solver);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      SummaryRow row;
      row.cell_id = t.cell_id;
      row.solver = t.solver;
      rows.push_back(row);
    }
    SummaryRow& row = rows[it->second];
    row.trials += 1;
    row.iter += t.iterations;
    row.aat += static_cast<double>(t.aat);
    row.relerr_pct += t.relerr_pct;
    row.res += t.res;
    row.rel_res += t.rel_res;
    row.seconds += t.seconds;
  }
  for (auto& row : rows) {
    double const n = row.trials;
    row.iter /= n;
    row.aat /= n;
    row.relerr_pct /= n;
    row.res /= n;
    row.rel_res /= n;
    row.seconds /= n;
  }
  return rows;
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows, bool timing)
{
  std::ofstream out = open_csv(path);
  out << "cell_id,solver,iter,aat,relerr_pct,res,seconds\n";
  for (const auto& r : rows) {
    out << r.cell_id << ',' << r.solver << ',' << csv_number(r.iter) << ',' << csv_number(r.aat) << ','
        << csv_number(r.relerr_pct) << ',' << csv_number(r.res) << ',';
    if (timing) { out << csv_number(r.seconds); }
    out << '\n';
  }
}

void write_trials_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& rows, bool timing)
{
  std::ofstream out = open_csv(path);
  out << "cell_id,trial,seed,solver,status,iter,aat,relerr_pct,res,rel_res,objective,seconds\n";
  for (const auto& r : rows) {
    out << r.cell_id << ',' << r.trial << ',' << r.seed << ',' << r.solver << ',' << r.status << ','
        << r.iterations << ',' << r.aat << ',' << csv_number(r.relerr_pct) << ',' << csv_number(r.res) << ','
        << csv_number(r.rel_res) << ',' << csv_number(r.objective) << ',';
    if (timing) { out << csv_number(r.seconds); }
    out << '\n';
  }
}

void write_curves_csv(const std::filesystem::path& path, const std::vector<CurveRow>& rows)
{
  std::ofstream out = open_csv(path);
  out << "cell_id,solver,iter,objective,relerr_pct,res\n";
  for (const auto& r : rows) {
    out << r.cell_id << ',' << r.solver << ',' << r.iter << ',' << csv_number(r.objective) << ','
        << csv_number(r.relerr_pct) << ',' << csv_number(r.res) << '\n';
  }
}

std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) { throw IoError("cannot read " + path.string()); }
  std::string line;
  std::getline(in, line);  // header
  std::vector<TrialRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) { continue; }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) { f.push_back(cell); }
    if (f.size() == 11) { f.emplace_back(); }  // empty seconds column
    if (f.size() != 12) { throw IoError("malformed trials row in " + path.string() + ": " + line); }
    TrialRecord r;
    r.cell_id = f[0];
    r.trial = std::stoi(f[1]);
    r.seed = std::stoull(f[2]);
    r.solver = f[3];
    r.status = f[4];
    r.iterations = std::stoi(f[5]);
    r.aat = std::stoll(f[6]);
    r.relerr_pct = std::stod(f[7]);
    r.res = std::stod(f[8]);
    r.rel_res = std::stod(f[9]);
    r.objective = std::stod(f[10]);
    r.seconds = f[11].empty() ? 0.0 : std::stod(f[11]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace l1adm
