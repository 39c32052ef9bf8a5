#pragma once

#include "l1adm/prox.hpp"
#include "l1adm/solver.hpp"

namespace l1adm {

/// Iterate (x, y, z) of the dual ADM. The products ax = A x and
/// aty = A^* y are carried along so an orthonormal-rows step costs exactly
/// one forward and one adjoint application; a_aty = A A^* y is only kept
/// current by the non-orthonormal step (it equals y when A A^* = I).
struct DadmState {
  CVector x;
  CVector y;
  CVector z;
  CVector ax;
  CVector aty;
  CVector a_aty;
  int k = 0;
};

DadmState make_dadm_state(const SensingOperator& a, CVector x, CVector y);

// Upper end of the admissible multiplier steplength, (sqrt(5) + 1) / 2.
inline constexpr double kGoldenRatio = 1.6180339887498949;

struct DadmParams {
  double beta = 1.0;
  double gamma = 1.618;
  double mu = 0.0;     // QP (0 gives BP)
  double delta = 0.0;  // BPDN
  DualSet dual_set;    // B_inf (weighted), or F for nonnegative models
};

// Validates beta > 0, gamma in (0, (sqrt(5)+1)/2), mu, delta >= 0.
DadmParams make_dadm_params(double beta, double gamma, double mu = 0.0, double delta = 0.0,
                            DualSet dual_set = {});

/// QP step, requires A A^* = I:
///   z <- P(A^* y + x / beta)
///   y <- (beta / (mu + beta)) (A z - (Ax - b) / beta)
///   x <- x - gamma beta (z - A^* y)
/// P projects onto params.dual_set.
DadmState dadm_qp_step(const DadmState& s, const SensingOperator& a, const CVector& b, const DadmParams& p);

/// BPDN step: y <- shrink_l2(A z - (Ax - b) / beta, delta / beta).
DadmState dadm_bpdn_step(const DadmState& s, const SensingOperator& a, const CVector& b, const DadmParams& p);

/// BP step: y <- A z - (Ax - b) / beta. With A A^* = I the residual obeys
/// A x_{k+1} - b = (1 - gamma)(A x_k - b).
DadmState dadm_bp_step(const DadmState& s, const SensingOperator& a, const CVector& b, const DadmParams& p);

/// Step for general A (QP, or BP with mu = 0): the y-subproblem is replaced
/// by one exact steepest-descent step along
///   g = mu y + Ax - b + beta A (A^* y - z)
/// with alpha = ||g||^2 / (mu ||g||^2 + beta ||A^* g||^2). The y-update is
/// skipped when g = 0. Convergence is not guaranteed; cap the iterations.
/// Costs two forward and one adjoint application.
DadmState dadm_nonorth_step(const DadmState& s, const SensingOperator& a, const CVector& b,
                            const DadmParams& p);

/// Dual ADM for all eight models. L1L1 is solved as BP on the augmented
/// operator; nonnegative models project z onto Re(z) <= w and clip the
/// returned x to max(Re x, 0). Operators without orthonormal rows are routed
/// through dadm_nonorth_step (QP and BP only).
RunRecord dadm_solve(const ModelSpec& model, const OperatorPtr& a, const CVector& b, const SolverOptions& opts);
RunRecord dadm_solve(const ModelSpec& model, const SensingOperator& a, const CVector& b,
                     const SolverOptions& opts);

}  // namespace l1adm
