#pragma once

#include "l1adm/harness.hpp"
#include "l1adm/models.hpp"
#include "l1adm/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace l1adm {

enum class Protocol { ModelChoice, ErrVsOpt, RaceQp, RaceBpdn, RaceBp };

std::string_view to_string(Protocol protocol);
Protocol protocol_from_string(std::string_view name);
// "model-choice, err-vs-opt, race-qp, race-bpdn, race-bp"
std::string protocol_names();

enum class Scale { Desk, Full };

struct RaceCell {
  double m_ratio = 0.3;  // m / n
  double k_ratio = 0.1;  // k / m
};

// One curve family in the error-vs-optimality experiment.
struct EvoCase {
  std::string name;
  ModelFamily family = ModelFamily::BP;
  double mu = 0.0;
  std::optional<double> snr_db;  // none: noiseless
};

struct ExperimentConfig {
  Protocol protocol = Protocol::RaceQp;
  std::uint64_t seed = 20090101;
  int trials = 10;
  Index n = 1024;
  OperatorKind op_kind = OperatorKind::PartialWalshHadamard;
  double eps = 5e-4;
  int max_iter = 3000;

  // solver races
  std::vector<RaceCell> cells;
  std::vector<std::string> solvers;
  double sigma = 1e-3;
  double mu = 1e-4;
  std::vector<std::string> curve_solvers;  // run for curve_iters from x0 = A^* b (race-qp) or 0
  int curve_iters = 0;

  // model-choice sweep and error-vs-optimality
  Index m = 300;
  Index k = 60;
  std::vector<std::string> models;  // bpdn, qp, l1l1
  std::vector<double> params;
  NoiseSpec noise;
  std::vector<EvoCase> cases;
};

// Defaults reproducing the corresponding figure/table at desk (n = 1024,
// 10 trials) or full (n = 8192, 50 trials) scale.
ExperimentConfig default_experiment_config(Protocol protocol, Scale scale = Scale::Desk);

struct TrialRecord {
  std::string cell_id;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string solver;
  std::string status;
  int iterations = 0;
  std::int64_t aat = 0;
  double relerr_pct = 0.0;
  double res = 0.0;
  double rel_res = 0.0;
  double objective = 0.0;
  double seconds = 0.0;
};

// Means over trials of one (cell, solver) pair.
struct SummaryRow {
  std::string cell_id;
  std::string solver;
  int trials = 0;
  double iter = 0.0;
  double aat = 0.0;
  double relerr_pct = 0.0;
  double res = 0.0;
  double rel_res = 0.0;
  double seconds = 0.0;
};

// Per-iteration means of a solver's trajectory.
struct CurveRow {
  std::string cell_id;
  std::string solver;
  int iter = 0;
  double objective = 0.0;
  double relerr_pct = 0.0;
  double res = 0.0;
};

struct ExperimentResult {
  std::vector<SummaryRow> summary;
  std::vector<TrialRecord> trials;
  std::vector<CurveRow> curves;
};

// Dispatch by solver name: padm, dadm, fista or ist.
RunRecord run_named_solver(const std::string& name, const ModelSpec& model, const OperatorPtr& a,
                           const CVector& b, const SolverOptions& opts);

ExperimentResult run_model_choice_sweep(const ExperimentConfig& config);
ExperimentResult run_error_vs_optimality(const ExperimentConfig& config);
ExperimentResult run_solver_race(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Means per (cell_id, solver) in order of first appearance.
std::vector<SummaryRow> aggregate(const std::vector<TrialRecord>& trials);

// Worker count for trial-level parallelism: L1ADM_THREADS, else 1.
int harness_threads();

// CSV writers. `timing` controls whether wall-clock seconds are written;
// without it the seconds column is left empty so reruns are byte-identical.
void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows, bool timing);
void write_trials_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& rows, bool timing);
void write_curves_csv(const std::filesystem::path& path, const std::vector<CurveRow>& rows);

std::vector<TrialRecord> read_trials_csv(const std::filesystem::path& path);

}  // namespace l1adm
