#pragma once

#include "l1adm/models.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace l1adm {

enum class StopRule { RelChg, Res };

std::string_view to_string(StopRule rule);
StopRule stop_rule_from_string(std::string_view name);

struct SolverOptions {
  // Unset values take the per-solver defaults (PADM: beta = 2m/||b||_1,
  // gamma = 1.199, tau = 0.8; DADM: beta = ||b||_1/m, gamma = 1.618).
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> tau;

  double eps = 1e-4;
  int max_iter = 1000;
  StopRule stop = StopRule::RelChg;

  // PADM: reject tau * lambda_max + gamma >= 2.
  bool enforce_step_guard = true;
  // Skips power iteration when the caller already knows lambda_max(A^*A).
  std::optional<double> lambda_max;
  std::uint64_t seed = 0x5eed;

  std::optional<CVector> x0;
  std::optional<CVector> y0;

  // When set, RelErr (percent) is recorded every iteration.
  std::optional<CVector> x_true;
  bool record_history = true;
  // Evaluate r_p / r_d / gap every iteration. PADM needs one extra adjoint
  // application for this (not counted in aat); with RelChg stopping it can
  // be switched off.
  bool track_residuals = true;
};

enum class RunStatus { Converged, MaxIter, Diverged };

std::string_view to_string(RunStatus status);

struct IterationRecord {
  int k = 0;
  double relchg = 0.0;
  double r_p = 0.0;
  double r_d = 0.0;
  double gap = 0.0;
  double res = 0.0;
  double objective = 0.0;
  std::optional<double> relerr;  // percent
  std::int64_t aat = 0;          // cumulative operator applications
};

struct RunRecord {
  std::string solver;
  ModelSpec model;
  RunStatus status = RunStatus::MaxIter;
  std::string message;
  int iterations = 0;
  std::int64_t aat = 0;  // forward plus adjoint applications
  double seconds = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double tau = 0.0;

  std::vector<IterationRecord> history;
  Diagnostics final;
  double rel_res = 0.0;  // ||Ax - b|| / ||b|| of the returned x

  CVector x;  // solution in the caller's variables
  CVector y;
  CVector z;
};

// ||b||_1 based defaults with fallback 1 for b = 0.
double default_padm_beta(const CVector& b);
double default_dadm_beta(const CVector& b);

}  // namespace l1adm
