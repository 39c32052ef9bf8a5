#include "l1adm/baselines.hpp"

#include "l1adm/prox.hpp"
#include "solver_common.hpp"

#include <cmath>

namespace l1adm {

namespace {

FistaState prox_gradient_step(const FistaState& s, const SensingOperator& a, const CVector& b, double mu,
                              double tau, ShrinkConvention convention, bool momentum, const RVector& weights)
{
  if (!(mu > 0.0)) { throw InvalidParameter("prox-gradient step requires mu > 0"); }
  if (!(tau > 0.0)) { throw InvalidParameter("prox-gradient step requires tau > 0"); }
  require_length(b, a.rows(), "prox-gradient b");
  require_length(s.x, a.cols(), "prox-gradient x");
  require_length(s.ax, a.rows(), "prox-gradient ax");

  CVector y = s.x;
  CVector ay = s.ax;
  if (momentum && s.k > 0) {
    double const w = (s.t_prev - 1.0) / s.t;
    y += w * (s.x - s.x_prev);
    ay += w * (s.ax - s.ax_prev);
  }

  double const threshold = convention == ShrinkConvention::Consistent ? tau * mu : tau / mu;
  CVector const v = y - tau * a.apply_adjoint(ay - b);

  FistaState next;
  next.x = weights.size() == 0 ? shrink(v, threshold) : shrink(v, RVector(threshold * weights));
  next.ax = a.apply(next.x);
  next.x_prev = s.x;
  next.ax_prev = s.ax;
  if (momentum) {
    next.t_prev = s.t;
    next.t = fista_t_next(s.t);
  }
  next.k = s.k + 1;
  detail::require_step_finite(next.x, next.ax, "FISTA/IST");
  return next;
}

RunRecord prox_gradient_solve(const char* name, bool momentum, const ModelSpec& model, const SensingOperator& a,
                              const CVector& b, const SolverOptions& opts, ShrinkConvention convention)
{
  detail::Stopwatch clock;
  model.validate(a.cols());
  detail::check_options(opts);
  require_length(b, a.rows(), "prox-gradient b");
  require_finite(b, "b");
  if (model.family != ModelFamily::QP || model.nonneg) {
    throw InvalidParameter(std::string(name) + " solves the QP model only");
  }
  double const mu = model.mu();

  RunRecord run;
  run.solver = name;
  run.model = model;
  run.tau = opts.tau.value_or(1.0);

  FistaState state = make_fista_state(a, opts.x0.value_or(CVector::Zero(a.cols())));
  if (!state.x.isZero(0.0)) { run.aat += 1; }

  DualSet const dual_set{model.weights, 0};
  auto diagnostics = [&](const FistaState& s) {
    // dual estimate from the residual; instrumentation only
    CVector const y = (b - s.ax) / mu;
    CVector const aty = a.apply_adjoint(y);
    CVector const z = dual_set.project(aty);
    return compute_res(model, ResidualInputs{s.x, y, z, s.ax, aty, b});
  };

  run.status = RunStatus::MaxIter;
  double last_relchg = 0.0;
  try {
    for (int k = 1; k <= opts.max_iter; ++k) {
      FistaState next = prox_gradient_step(state, a, b, mu, run.tau, convention, momentum, model.weights);
      run.aat += 2;
      run.iterations = k;

      Diagnostics d;
      if (opts.track_residuals || opts.stop == StopRule::Res) {
        d = diagnostics(next);
      } else {
        d.objective = model_objective(model, next.x, next.ax, b);
      }
      d.relchg = relchg(next.x, state.x);
      if (state.x.isZero(0.0)) { d.flags |= kAbsoluteRelChg; }
      if (opts.x_true) { d.relerr = relerr(next.x, *opts.x_true); }
      last_relchg = d.relchg;
      state = std::move(next);
      if (detail::record_iteration(run, opts, state.k, d)) {
        run.status = RunStatus::Converged;
        break;
      }
    }
  } catch (const DivergenceError& e) {
    run.status = RunStatus::Diverged;
    run.message = e.what();
  }

  run.x = state.x;
  if (all_finite(state.x)) {
    state.ax = a.apply(state.x);
    run.final = diagnostics(state);
    run.y = (b - state.ax) / mu;
    run.z = dual_set.project(a.apply_adjoint(run.y));
    double const bnorm = b.norm();
    run.rel_res = bnorm > 0.0 ? (state.ax - b).norm() / bnorm : (state.ax - b).norm();
    if (opts.x_true) { run.final.relerr = relerr(state.x, *opts.x_true); }
  }
  run.final.relchg = last_relchg;
  run.seconds = clock.seconds();
  return run;
}

}  // namespace

FistaState make_fista_state(const SensingOperator& a, CVector x0)
{
  require_length(x0, a.cols(), "fista initial x");
  require_finite(x0, "fista initial x");
  FistaState s;
  s.ax = x0.isZero(0.0) ? CVector(CVector::Zero(a.rows())) : a.apply(x0);
  s.ax_prev = s.ax;
  s.x_prev = x0;
  s.x = std::move(x0);
  return s;
}

double fista_t_next(double t) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t)); }

FistaState fista_step(const FistaState& s, const SensingOperator& a, const CVector& b, double mu, double tau,
                      ShrinkConvention convention)
{
  return prox_gradient_step(s, a, b, mu, tau, convention, true, RVector{});
}

FistaState ist_step(const FistaState& s, const SensingOperator& a, const CVector& b, double mu, double tau,
                    ShrinkConvention convention)
{
  return prox_gradient_step(s, a, b, mu, tau, convention, false, RVector{});
}

RunRecord fista_solve(const ModelSpec& model, const SensingOperator& a, const CVector& b,
                      const SolverOptions& opts, ShrinkConvention convention)
{
  return prox_gradient_solve("FISTA", true, model, a, b, opts, convention);
}

RunRecord ist_solve(const ModelSpec& model, const SensingOperator& a, const CVector& b,
                    const SolverOptions& opts, ShrinkConvention convention)
{
  return prox_gradient_solve("IST", false, model, a, b, opts, convention);
}

}  // namespace l1adm
