#include "l1adm/models.hpp"

#include <cmath>
#include <limits>

namespace l1adm {

std::string_view to_string(ModelFamily family)
{
  switch (family) {
  case ModelFamily::BP: return "BP";
  case ModelFamily::BPDN: return "BPDN";
  case ModelFamily::QP: return "QP";
  case ModelFamily::L1L1: return "L1L1";
  }
  return "unknown";
}

ModelFamily model_family_from_string(std::string_view name)
{
  if (name == "BP" || name == "bp") { return ModelFamily::BP; }
  if (name == "BPDN" || name == "bpdn" || name == "BPdelta") { return ModelFamily::BPDN; }
  if (name == "QP" || name == "qp" || name == "QPmu") { return ModelFamily::QP; }
  if (name == "L1L1" || name == "l1l1") { return ModelFamily::L1L1; }
  throw InvalidParameter("unknown model family '" + std::string(name) + "' (expected BP, BPDN, QP or L1L1)");
}

void ModelSpec::validate(Index n) const
{
  if (!std::isfinite(param)) { throw InvalidParameter("model parameter must be finite"); }
  switch (family) {
  case ModelFamily::BP: break;
  case ModelFamily::BPDN:
    if (param < 0.0) { throw InvalidParameter("BPDN requires delta >= 0"); }
    break;
  case ModelFamily::QP:
    if (!(param > 0.0)) { throw InvalidParameter("QP requires mu > 0"); }
    break;
  case ModelFamily::L1L1:
    if (!(param > 0.0)) { throw InvalidParameter("L1L1 requires nu > 0"); }
    break;
  }
  if (weights.size() != 0) {
    if (weights.size() != n) {
      throw DimensionMismatch("weights: expected length " + std::to_string(n) + ", got " +
                              std::to_string(weights.size()));
    }
    if (!(weights.array() > 0.0).all() || !weights.allFinite()) {
      throw InvalidParameter("weights must be positive and finite");
    }
  }
}

Diagnostics compute_res(const ModelSpec& model, const ResidualInputs& in)
{
  if (model.family == ModelFamily::L1L1) {
    throw InvalidParameter("compute_res: reformulate L1L1 as BP before evaluating residues");
  }
  Diagnostics d;
  double const bnorm = in.b.norm();
  double const l1 = l1_norm(in.x, model.weights);
  auto const m = static_cast<double>(in.b.size());

  CVector residual = in.ax - in.b;
  double primal = 0.0;
  switch (model.family) {
  case ModelFamily::QP:
    residual += model.mu() * in.y;
    primal = residual.norm();
    break;
  case ModelFamily::BPDN: primal = std::max(residual.norm() - model.delta(), 0.0); break;
  default: primal = residual.norm(); break;
  }
  if (bnorm > 0.0) {
    d.r_p = primal / bnorm;
  } else {
    d.r_p = primal;
    d.flags |= kAbsolutePrimal;
  }

  d.r_d = (in.aty - in.z).norm() / std::sqrt(m);

  double delta_gap = 0.0;
  double f_p = l1;
  switch (model.family) {
  case ModelFamily::QP: {
    double const mu = model.mu();
    double const ynorm2 = in.y.squaredNorm();
    delta_gap = re_dot(in.b, in.y) - mu * ynorm2 - l1;
    f_p = l1 + 0.5 * mu * ynorm2;
    break;
  }
  case ModelFamily::BPDN: delta_gap = re_dot(in.b, in.y) - model.delta() * in.y.norm() - l1; break;
  default: d.flags |= kGapOmitted; break;
  }
  if (!(d.flags & kGapOmitted)) {
    if (f_p > 0.0) {
      d.gap = std::abs(delta_gap) / f_p;
    } else {
      d.gap = std::abs(delta_gap);
      d.flags |= kAbsoluteGap;
    }
  }
  d.res = std::max({d.r_p, d.r_d, d.gap});
  d.objective = model_objective(model, in.x, in.ax, in.b);
  return d;
}

Diagnostics compute_res(const CVector& x, const CVector& y, const CVector& z, const SensingOperator& a,
                        const CVector& b, const ModelSpec& model)
{
  require_length(x, a.cols(), "compute_res x");
  require_length(z, a.cols(), "compute_res z");
  require_length(y, a.rows(), "compute_res y");
  require_length(b, a.rows(), "compute_res b");
  CVector const ax = a.apply(x);
  CVector const aty = a.apply_adjoint(y);
  return compute_res(model, ResidualInputs{x, y, z, ax, aty, b});
}

Diagnostics compute_res(const CVector& x, const CVector& y, const CVector& z, const SensingOperator& a,
                        const CVector& b, double mu)
{
  return compute_res(x, y, z, a, b, ModelSpec::qp(mu));
}

double model_objective(const ModelSpec& model, const CVector& x, const CVector& ax, const CVector& b)
{
  double const l1 = l1_norm(x, model.weights);
  switch (model.family) {
  case ModelFamily::QP: return l1 + (ax - b).squaredNorm() / (2.0 * model.mu());
  case ModelFamily::L1L1: return l1 + (ax - b).cwiseAbs().sum() / model.nu();
  default: return l1;
  }
}

double relchg(const CVector& x_new, const CVector& x_old)
{
  double const old_norm = x_old.norm();
  double const diff = (x_new - x_old).norm();
  return old_norm > 0.0 ? diff / old_norm : x_new.norm();
}

double relerr(const CVector& x, const CVector& x_true)
{
  double const truth = x_true.norm();
  if (!(truth > 0.0)) { throw InvalidParameter("relerr: true signal is zero"); }
  require_length(x, x_true.size(), "relerr");
  return 100.0 * (x - x_true).norm() / truth;
}

double snr_db(const CVector& b, const CVector& p)
{
  require_length(p, b.size(), "snr_db");
  Complex const mean = b.mean();
  double const signal = (b.array() - mean).matrix().norm();
  double const noise = p.norm();
  if (signal == 0.0) { return noise == 0.0 ? std::numeric_limits<double>::quiet_NaN() : -HUGE_VAL; }
  if (noise == 0.0) { return HUGE_VAL; }
  return 20.0 * std::log10(signal / noise);
}

CVector L1L1Reformulation::extract(const CVector& x_hat) const
{
  require_length(x_hat, n + m, "L1L1 extract");
  return x_hat.head(n) / nu;
}

CVector L1L1Reformulation::embed(const CVector& x, const CVector& r) const
{
  require_length(x, n, "L1L1 embed x");
  require_length(r, m, "L1L1 embed r");
  CVector out(n + m);
  out.head(n) = nu * x;
  out.tail(m) = r;
  return out;
}

L1L1Reformulation reformulate_l1l1(OperatorPtr a, const CVector& b, double nu)
{
  if (!a) { throw InvalidParameter("reformulate_l1l1: null operator"); }
  require_length(b, a->rows(), "reformulate_l1l1 b");
  L1L1Reformulation out;
  out.n = a->cols();
  out.m = a->rows();
  out.nu = nu;
  out.op = build_augmented(std::move(a), nu);
  out.b_hat = b * (nu / std::sqrt(1.0 + nu * nu));
  return out;
}

}  // namespace l1adm
