#include "l1adm/dadm.hpp"

#include "solver_common.hpp"

#include <cmath>
#include <sstream>

namespace l1adm {

namespace {

enum class DualBlock { Qp, Bpdn, Bp };

void check_state(const DadmState& s, const SensingOperator& a, const CVector& b)
{
  Index const m = a.rows();
  Index const n = a.cols();
  require_length(b, m, "dadm step b");
  require_length(s.x, n, "dadm state x");
  require_length(s.ax, m, "dadm state ax");
  require_length(s.y, m, "dadm state y");
  require_length(s.aty, n, "dadm state aty");
}

DadmState dadm_orthonormal_step(const DadmState& s, const SensingOperator& a, const CVector& b,
                                const DadmParams& p, DualBlock block)
{
  if (!a.orthonormal_rows()) {
    throw InvalidParameter("exact DADM steps require an operator with orthonormal rows; "
                           "use dadm_nonorth_step");
  }
  check_state(s, a, b);

  DadmState next;
  next.z = p.dual_set.project(s.aty + s.x / p.beta);
  CVector const az = a.apply(next.z);
  CVector const v = az - (s.ax - b) / p.beta;
  switch (block) {
  case DualBlock::Qp: next.y = (p.beta / (p.mu + p.beta)) * v; break;
  case DualBlock::Bpdn: next.y = shrink_l2(v, p.delta / p.beta); break;
  case DualBlock::Bp: next.y = v; break;
  }
  next.aty = a.apply_adjoint(next.y);
  double const step = p.gamma * p.beta;
  next.x = s.x - step * (next.z - next.aty);
  next.ax = s.ax - step * (az - next.y);  // A A^* y = y
  next.a_aty = next.y;
  next.k = s.k + 1;
  detail::require_step_finite(next.x, next.y, "DADM");
  return next;
}

}  // namespace

DadmState make_dadm_state(const SensingOperator& a, CVector x, CVector y)
{
  require_length(x, a.cols(), "dadm initial x");
  require_length(y, a.rows(), "dadm initial y");
  require_finite(x, "dadm initial x");
  require_finite(y, "dadm initial y");
  DadmState s;
  s.ax = x.isZero(0.0) ? CVector(CVector::Zero(a.rows())) : a.apply(x);
  if (y.isZero(0.0)) {
    s.aty = CVector::Zero(a.cols());
    s.a_aty = CVector::Zero(a.rows());
  } else {
    s.aty = a.apply_adjoint(y);
    s.a_aty = a.apply(s.aty);
  }
  s.z = CVector::Zero(a.cols());
  s.x = std::move(x);
  s.y = std::move(y);
  return s;
}

DadmParams make_dadm_params(double beta, double gamma, double mu, double delta, DualSet dual_set)
{
  if (!(beta > 0.0) || !std::isfinite(beta)) { throw InvalidParameter("DADM requires beta > 0"); }
  if (!(gamma > 0.0 && gamma < kGoldenRatio)) {
    std::ostringstream msg;
    msg << "DADM requires gamma in (0, (sqrt(5)+1)/2), got " << gamma;
    throw InvalidParameter(msg.str());
  }
  if (mu < 0.0 || delta < 0.0) { throw InvalidParameter("DADM requires mu, delta >= 0"); }
  DadmParams p;
  p.beta = beta;
  p.gamma = gamma;
  p.mu = mu;
  p.delta = delta;
  p.dual_set = std::move(dual_set);
  return p;
}

DadmState dadm_qp_step(const DadmState& s, const SensingOperator& a, const CVector& b, const DadmParams& p)
{
  return dadm_orthonormal_step(s, a, b, p, DualBlock::Qp);
}

DadmState dadm_bpdn_step(const DadmState& s, const SensingOperator& a, const CVector& b, const DadmParams& p)
{
  return dadm_orthonormal_step(s, a, b, p, DualBlock::Bpdn);
}

DadmState dadm_bp_step(const DadmState& s, const SensingOperator& a, const CVector& b, const DadmParams& p)
{
  return dadm_orthonormal_step(s, a, b, p, DualBlock::Bp);
}

DadmState dadm_nonorth_step(const DadmState& s, const SensingOperator& a, const CVector& b,
                            const DadmParams& p)
{
  check_state(s, a, b);
  require_length(s.a_aty, a.rows(), "dadm state a_aty");

  DadmState next;
  next.z = p.dual_set.project(s.aty + s.x / p.beta);
  CVector const az = a.apply(next.z);
  CVector const g = p.mu * s.y + (s.ax - b) + p.beta * (s.a_aty - az);

  next.y = s.y;
  next.aty = s.aty;
  next.a_aty = s.a_aty;
  double const g2 = g.squaredNorm();
  if (g2 > 0.0) {
    CVector const atg = a.apply_adjoint(g);
    double const denom = p.mu * g2 + p.beta * atg.squaredNorm();
    if (denom > 0.0) {
      double const alpha = g2 / denom;
      next.y -= alpha * g;
      next.aty -= alpha * atg;
      next.a_aty -= alpha * a.apply(atg);
    }
  }
  double const step = p.gamma * p.beta;
  next.x = s.x - step * (next.z - next.aty);
  next.ax = s.ax - step * (az - next.a_aty);
  next.k = s.k + 1;
  detail::require_step_finite(next.x, next.y, "DADM");
  return next;
}

RunRecord dadm_solve(const ModelSpec& model, const SensingOperator& a, const CVector& b,
                     const SolverOptions& opts)
{
  // non-owning handle; the reformulation only lives for this call
  OperatorPtr const handle(std::shared_ptr<const SensingOperator>{}, &a);
  return dadm_solve(model, handle, b, opts);
}

RunRecord dadm_solve(const ModelSpec& model, const OperatorPtr& a, const CVector& b, const SolverOptions& opts)
{
  detail::Stopwatch clock;
  if (!a) { throw InvalidParameter("dadm_solve: null operator"); }
  Index const n = a->cols();
  Index const m = a->rows();
  model.validate(n);
  detail::check_options(opts);
  require_length(b, m, "dadm_solve b");
  require_finite(b, "b");

  RunRecord run;
  run.solver = "DADM";
  run.model = model;

  // The iteration runs on (op, rhs, inner); for L1L1 that is BP on the
  // augmented operator in x_hat = (nu x; r).
  OperatorPtr op = a;
  CVector rhs = b;
  ModelSpec inner = model;
  std::optional<L1L1Reformulation> reform;
  DualSet dual_set{model.weights, model.nonneg ? n : 0};
  if (model.family == ModelFamily::L1L1) {
    reform = reformulate_l1l1(a, b, model.nu());
    op = reform->op;
    rhs = reform->b_hat;
    inner = ModelSpec::bp();
    if (model.weights.size() != 0) {
      RVector w = RVector::Ones(n + m);
      w.head(n) = model.weights;
      inner.weights = w;
      dual_set.radii = w;
    }
  }

  bool const orthonormal = op->orthonormal_rows();
  if (!orthonormal && inner.family == ModelFamily::BPDN) {
    throw InvalidParameter("dadm_solve: BPDN needs an operator with orthonormal rows "
                           "(no steepest-descent variant for the delta-constrained dual)");
  }

  run.beta = opts.beta.value_or(default_dadm_beta(rhs));
  run.gamma = opts.gamma.value_or(1.618);
  DadmParams const params = make_dadm_params(run.beta, run.gamma, inner.mu(), inner.delta(), dual_set);

  CVector x0 = CVector::Zero(op->cols());
  if (opts.x0) {
    require_length(*opts.x0, n, "dadm_solve x0");
    x0 = reform ? reform->embed(*opts.x0, b - a->apply(*opts.x0)) : *opts.x0;
  }
  DadmState state = make_dadm_state(*op, std::move(x0), opts.y0.value_or(CVector::Zero(m)));
  if (!state.x.isZero(0.0)) { run.aat += 1; }
  if (opts.y0 && !opts.y0->isZero(0.0)) { run.aat += 2; }

  auto output_x = [&](const CVector& iterate) {
    CVector out = reform ? reform->extract(iterate) : iterate;
    if (model.nonneg) { out = out.real().cwiseMax(0.0).cast<Complex>(); }
    return out;
  };

  run.status = RunStatus::MaxIter;
  double last_relchg = 0.0;
  try {
    for (int k = 1; k <= opts.max_iter; ++k) {
      DadmState next;
      if (!orthonormal) {
        next = dadm_nonorth_step(state, *op, rhs, params);
        run.aat += 3;
      } else {
        switch (inner.family) {
        case ModelFamily::QP: next = dadm_qp_step(state, *op, rhs, params); break;
        case ModelFamily::BPDN: next = dadm_bpdn_step(state, *op, rhs, params); break;
        default: next = dadm_bp_step(state, *op, rhs, params); break;
        }
        run.aat += 2;
      }
      run.iterations = k;

      Diagnostics d = compute_res(inner, ResidualInputs{next.x, next.y, next.z, next.ax, next.aty, rhs});
      d.relchg = relchg(next.x, state.x);
      if (state.x.isZero(0.0)) { d.flags |= kAbsoluteRelChg; }
      if (opts.x_true) { d.relerr = relerr(output_x(next.x), *opts.x_true); }
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

  run.x = output_x(state.x);
  run.y = state.y;
  run.z = state.z;
  if (all_finite(state.x) && all_finite(state.y)) {
    CVector const ax_iter = op->apply(state.x);
    CVector const aty = op->apply_adjoint(state.y);
    run.final = compute_res(inner, ResidualInputs{state.x, state.y, state.z, ax_iter, aty, rhs});
    CVector const ax = a->apply(run.x);
    run.final.objective = model_objective(model, run.x, ax, b);
    double const bnorm = b.norm();
    run.rel_res = bnorm > 0.0 ? (ax - b).norm() / bnorm : (ax - b).norm();
    if (opts.x_true) { run.final.relerr = relerr(run.x, *opts.x_true); }
  }
  run.final.relchg = last_relchg;
  run.seconds = clock.seconds();
  return run;
}

}  // namespace l1adm
