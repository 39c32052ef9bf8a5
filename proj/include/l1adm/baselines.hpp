#pragma once

#include "l1adm/solver.hpp"

namespace l1adm {

// Threshold used in the proximal-gradient step for
//   min ||x||_1 + ||Ax - b||^2 / (2 mu).
// Consistent: Shrink(y - tau A^*(Ay - b), tau * mu), the exact prox step.
// Literal:    Shrink(y - tau A^*(Ay - b), tau / mu).
enum class ShrinkConvention { Consistent, Literal };

struct FistaState {
  CVector x;
  CVector x_prev;
  CVector ax;
  CVector ax_prev;
  double t = 1.0;       // t_k
  double t_prev = 1.0;  // t_{k-1}
  int k = 0;
};

FistaState make_fista_state(const SensingOperator& a, CVector x0);

// t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2
double fista_t_next(double t);

/// One FISTA step from x^k: y^k = x^k + ((t_{k-1} - 1) / t_k)(x^k - x^{k-1})
/// (y^0 = x^0), then the shrinkage step from y^k. Two operator applications.
FistaState fista_step(const FistaState& s, const SensingOperator& a, const CVector& b, double mu, double tau,
                      ShrinkConvention convention = ShrinkConvention::Consistent);

/// FISTA with t_k = 1, i.e. no momentum.
FistaState ist_step(const FistaState& s, const SensingOperator& a, const CVector& b, double mu, double tau,
                    ShrinkConvention convention = ShrinkConvention::Consistent);

/// Loops for the QP model only. tau defaults to 1; RelChg/Res stopping as
/// for the ADMs (Res uses y = (b - Ax) / mu, z = A^* y).
RunRecord fista_solve(const ModelSpec& model, const SensingOperator& a, const CVector& b,
                      const SolverOptions& opts, ShrinkConvention convention = ShrinkConvention::Consistent);
RunRecord ist_solve(const ModelSpec& model, const SensingOperator& a, const CVector& b,
                    const SolverOptions& opts, ShrinkConvention convention = ShrinkConvention::Consistent);

}  // namespace l1adm
