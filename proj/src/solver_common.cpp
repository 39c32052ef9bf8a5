#include "solver_common.hpp"

#include <cmath>

namespace l1adm {

std::string_view to_string(StopRule rule) { return rule == StopRule::RelChg ? "relchg" : "res"; }

StopRule stop_rule_from_string(std::string_view name)
{
  if (name == "relchg") { return StopRule::RelChg; }
  if (name == "res") { return StopRule::Res; }
  throw InvalidParameter("unknown stop rule '" + std::string(name) + "' (expected relchg or res)");
}

std::string_view to_string(RunStatus status)
{
  switch (status) {
  case RunStatus::Converged: return "converged";
  case RunStatus::MaxIter: return "max_iter";
  case RunStatus::Diverged: return "diverged";
  }
  return "unknown";
}

double default_padm_beta(const CVector& b)
{
  double const l1 = b.cwiseAbs().sum();
  return l1 > 0.0 ? 2.0 * static_cast<double>(b.size()) / l1 : 1.0;
}

double default_dadm_beta(const CVector& b)
{
  double const l1 = b.cwiseAbs().sum();
  return l1 > 0.0 ? l1 / static_cast<double>(b.size()) : 1.0;
}

namespace detail {

void require_step_finite(const CVector& x, const CVector& y, const char* solver)
{
  if (!all_finite(x) || !all_finite(y)) {
    throw DivergenceError(std::string(solver) + ": iterate became non-finite (check step parameters)");
  }
}

bool record_iteration(RunRecord& run, const SolverOptions& opts, int k, const Diagnostics& d)
{
  if (opts.record_history) {
    IterationRecord row;
    row.k = k;
    row.relchg = d.relchg;
    row.r_p = d.r_p;
    row.r_d = d.r_d;
    row.gap = d.gap;
    row.res = d.res;
    row.objective = d.objective;
    row.relerr = d.relerr;
    row.aat = run.aat;
    run.history.push_back(row);
  }
  double const measure = opts.stop == StopRule::RelChg ? d.relchg : d.res;
  return measure < opts.eps;
}

void check_options(const SolverOptions& opts)
{
  if (!(opts.eps > 0.0)) { throw InvalidParameter("eps must be positive"); }
  if (opts.max_iter < 1) { throw InvalidParameter("max_iter must be at least 1"); }
  if (opts.beta && !(*opts.beta > 0.0)) { throw InvalidParameter("beta must be positive"); }
  if (opts.gamma && !(*opts.gamma > 0.0)) { throw InvalidParameter("gamma must be positive"); }
  if (opts.tau && !(*opts.tau > 0.0)) { throw InvalidParameter("tau must be positive"); }
}

}  // namespace detail
}  // namespace l1adm
