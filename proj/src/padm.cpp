#include "l1adm/padm.hpp"

#include "l1adm/prox.hpp"
#include "l1adm/spectral.hpp"
#include "solver_common.hpp"

#include <cmath>
#include <sstream>

namespace l1adm {

namespace {

enum class ResidualBlock { Qp, Bpdn, Bp };

PadmState padm_step(const PadmState& s, const SensingOperator& a, const CVector& b, const PadmParams& p,
                    ResidualBlock block)
{
  Index const m = a.rows();
  Index const n = a.cols();
  require_length(b, m, "padm step b");
  require_length(s.x, n, "padm state x");
  require_length(s.y, m, "padm state y");
  require_length(s.ax, m, "padm state ax");

  CVector const residual = s.ax - b;
  CVector const y_scaled = s.y / p.beta;

  PadmState next;
  switch (block) {
  case ResidualBlock::Qp: {
    double const mb = p.mu * p.beta;
    next.r = (mb / (1.0 + mb)) * (y_scaled - residual);
    break;
  }
  case ResidualBlock::Bpdn: next.r = project_l2_ball(y_scaled - residual, p.delta); break;
  case ResidualBlock::Bp: next.r = CVector::Zero(m); break;
  }

  CVector const g = a.apply_adjoint(residual + next.r - y_scaled);
  CVector const v = s.x - p.tau * g;
  double const threshold = p.tau / p.beta;
  next.x = p.weights.size() == 0 ? shrink(v, threshold) : shrink(v, RVector(threshold * p.weights));
  next.ax = a.apply(next.x);
  next.y = s.y - (p.gamma * p.beta) * (next.ax + next.r - b);
  next.k = s.k + 1;
  detail::require_step_finite(next.x, next.y, "PADM");
  return next;
}

}  // namespace

PadmState make_padm_state(const SensingOperator& a, CVector x, CVector y)
{
  require_length(x, a.cols(), "padm initial x");
  require_length(y, a.rows(), "padm initial y");
  require_finite(x, "padm initial x");
  require_finite(y, "padm initial y");
  PadmState s;
  s.ax = x.isZero(0.0) ? CVector(CVector::Zero(a.rows())) : a.apply(x);
  s.x = std::move(x);
  s.y = std::move(y);
  s.r = CVector::Zero(a.rows());
  return s;
}

PadmParams make_padm_params(const SensingOperator& a, double beta, double gamma, double tau, double mu,
                            double delta, bool enforce_guard, std::optional<double> lambda_max,
                            std::uint64_t seed)
{
  if (!(beta > 0.0) || !(gamma > 0.0) || !(tau > 0.0)) {
    throw InvalidParameter("PADM requires beta, gamma, tau > 0");
  }
  if (mu < 0.0 || delta < 0.0) { throw InvalidParameter("PADM requires mu, delta >= 0"); }
  PadmParams p;
  p.beta = beta;
  p.gamma = gamma;
  p.tau = tau;
  p.mu = mu;
  p.delta = delta;
  p.lambda_max = lambda_max ? *lambda_max : estimate_lambda_max(a, 1e-6, 200, seed).lambda_max;
  if (enforce_guard && !(tau * p.lambda_max + gamma < 2.0)) {
    std::ostringstream msg;
    msg << "PADM step condition violated: tau * lambda_max + gamma = " << tau * p.lambda_max + gamma
        << " (tau = " << tau << ", lambda_max = " << p.lambda_max << ", gamma = " << gamma
        << "), must be < 2";
    throw InvalidParameter(msg.str());
  }
  return p;
}

PadmState padm_qp_step(const PadmState& s, const SensingOperator& a, const CVector& b, const PadmParams& p)
{
  if (!(p.mu > 0.0)) { throw InvalidParameter("padm_qp_step requires mu > 0"); }
  return padm_step(s, a, b, p, ResidualBlock::Qp);
}

PadmState padm_bpdn_step(const PadmState& s, const SensingOperator& a, const CVector& b, const PadmParams& p)
{
  if (p.delta < 0.0) { throw InvalidParameter("padm_bpdn_step requires delta >= 0"); }
  return padm_step(s, a, b, p, ResidualBlock::Bpdn);
}

PadmState padm_bp_step(const PadmState& s, const SensingOperator& a, const CVector& b, const PadmParams& p)
{
  return padm_step(s, a, b, p, ResidualBlock::Bp);
}

RunRecord padm_solve(const ModelSpec& model, const SensingOperator& a, const CVector& b,
                     const SolverOptions& opts)
{
  detail::Stopwatch clock;
  model.validate(a.cols());
  detail::check_options(opts);
  require_length(b, a.rows(), "padm_solve b");
  require_finite(b, "b");
  if (model.family == ModelFamily::L1L1) {
    throw InvalidParameter("padm_solve supports BP, BPDN and QP; solve L1L1 with dadm_solve");
  }
  if (model.nonneg) { throw InvalidParameter("padm_solve has no nonnegative variant; use dadm_solve"); }

  RunRecord run;
  run.solver = "PADM";
  run.model = model;
  run.beta = opts.beta.value_or(default_padm_beta(b));
  run.gamma = opts.gamma.value_or(1.199);
  run.tau = opts.tau.value_or(0.8);

  PadmParams params = make_padm_params(a, run.beta, run.gamma, run.tau, model.mu(), model.delta(),
                                       opts.enforce_step_guard, opts.lambda_max, opts.seed);
  params.weights = model.weights;

  PadmState state = make_padm_state(a, opts.x0.value_or(CVector::Zero(a.cols())),
                                    opts.y0.value_or(CVector::Zero(a.rows())));
  if (opts.x0 && !opts.x0->isZero(0.0)) { run.aat += 1; }

  DualSet const dual_set{model.weights, 0};
  run.status = RunStatus::MaxIter;
  double last_relchg = 0.0;
  try {
    for (int k = 1; k <= opts.max_iter; ++k) {
      PadmState next;
      switch (model.family) {
      case ModelFamily::QP: next = padm_qp_step(state, a, b, params); break;
      case ModelFamily::BPDN: next = padm_bpdn_step(state, a, b, params); break;
      default: next = padm_bp_step(state, a, b, params); break;
      }
      run.aat += 2;
      run.iterations = k;

      Diagnostics d;
      bool const need_res = opts.track_residuals || opts.stop == StopRule::Res;
      if (need_res) {
        // instrumentation only; not counted in aat
        CVector const aty = a.apply_adjoint(next.y);
        CVector const z = dual_set.project(aty);
        d = compute_res(model, ResidualInputs{next.x, next.y, z, next.ax, aty, b});
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
  run.y = state.y;
  CVector const aty = a.apply_adjoint(state.y);
  run.z = dual_set.project(aty);
  if (all_finite(state.x) && all_finite(state.y)) {
    CVector const ax = a.apply(state.x);
    run.final = compute_res(model, ResidualInputs{state.x, state.y, run.z, ax, aty, b});
    double const bnorm = b.norm();
    run.rel_res = bnorm > 0.0 ? (ax - b).norm() / bnorm : (ax - b).norm();
    if (opts.x_true) { run.final.relerr = relerr(state.x, *opts.x_true); }
  }
  run.final.relchg = last_relchg;
  run.seconds = clock.seconds();
  return run;
}

}  // namespace l1adm
