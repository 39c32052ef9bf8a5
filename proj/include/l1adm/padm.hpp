#pragma once

#include "l1adm/solver.hpp"

namespace l1adm {

/// Iterate (x, r, y) of the primal ADM, with ax = A x cached so each step
/// costs one forward and one adjoint application.
struct PadmState {
  CVector x;
  CVector r;
  CVector y;
  CVector ax;
  int k = 0;
};

PadmState make_padm_state(const SensingOperator& a, CVector x, CVector y);

struct PadmParams {
  double beta = 1.0;
  double gamma = 1.199;
  double tau = 0.8;
  double mu = 0.0;     // QP
  double delta = 0.0;  // BPDN
  RVector weights;     // empty: unweighted shrinkage threshold tau/beta
  double lambda_max = 1.0;
};

/// Builds step parameters and enforces the convergence condition
/// tau * lambda_max + gamma < 2 (lambda_max of A^* A, estimated by power
/// iteration unless given). Throws InvalidParameter on violation unless
/// `enforce_guard` is false.
PadmParams make_padm_params(const SensingOperator& a, double beta, double gamma, double tau, double mu = 0.0,
                            double delta = 0.0, bool enforce_guard = true,
                            std::optional<double> lambda_max = std::nullopt, std::uint64_t seed = 0x5eed);

/// QP step, in order:
///   r <- (mu beta / (1 + mu beta)) (y / beta - (Ax - b))
///   g <- A^*(Ax + r - b - y / beta)
///   x <- shrink(x - tau g, tau / beta)
///   y <- y - gamma beta (Ax + r - b)      (with the new x)
PadmState padm_qp_step(const PadmState& s, const SensingOperator& a, const CVector& b, const PadmParams& p);

/// BPDN step: as the QP step with r <- P_{||.|| <= delta}(y / beta - (Ax - b)).
PadmState padm_bpdn_step(const PadmState& s, const SensingOperator& a, const CVector& b, const PadmParams& p);

/// BP step (r eliminated):
///   x <- shrink(x - tau A^*(Ax - b - y / beta), tau / beta)
///   y <- y - gamma beta (Ax - b)
PadmState padm_bp_step(const PadmState& s, const SensingOperator& a, const CVector& b, const PadmParams& p);

/// Runs the primal ADM for BP, BPDN or QP from x0 = 0, y0 = 0 (or the warm
/// start in `opts`) until the stop rule holds or max_iter is reached.
RunRecord padm_solve(const ModelSpec& model, const SensingOperator& a, const CVector& b,
                     const SolverOptions& opts);

}  // namespace l1adm
