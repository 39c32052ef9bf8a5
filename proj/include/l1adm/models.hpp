#pragma once

#include "l1adm/sensing_operator.hpp"

#include <memory>
#include <optional>
#include <string_view>

namespace l1adm {

/// BP:    min ||x||_1  s.t. Ax = b
/// BPDN:  min ||x||_1  s.t. ||Ax - b|| <= delta
/// QP:    min ||x||_1 + ||Ax - b||^2 / (2 mu)
/// L1L1:  min ||x||_1 + ||Ax - b||_1 / nu
/// Each family also has a nonnegative (x >= 0, real) counterpart, and all
/// accept per-component l1 weights.
enum class ModelFamily { BP, BPDN, QP, L1L1 };

std::string_view to_string(ModelFamily family);
ModelFamily model_family_from_string(std::string_view name);

struct ModelSpec {
  ModelFamily family = ModelFamily::BP;
  bool nonneg = false;
  RVector weights;     // empty: unweighted
  double param = 0.0;  // mu (QP), delta (BPDN), nu (L1L1); ignored for BP

  static ModelSpec bp() { return {}; }
  static ModelSpec bpdn(double delta) { return {ModelFamily::BPDN, false, {}, delta}; }
  static ModelSpec qp(double mu) { return {ModelFamily::QP, false, {}, mu}; }
  static ModelSpec l1l1(double nu) { return {ModelFamily::L1L1, false, {}, nu}; }

  double mu() const { return family == ModelFamily::QP ? param : 0.0; }
  double delta() const { return family == ModelFamily::BPDN ? param : 0.0; }
  double nu() const { return family == ModelFamily::L1L1 ? param : 0.0; }

  // Throws InvalidParameter unless the parameter suits the family
  // (mu > 0, delta >= 0, nu > 0) and weights are positive with length n.
  void validate(Index n) const;
};

enum DiagnosticFlag : unsigned {
  kAbsolutePrimal = 1u << 0,  // ||b|| = 0, r_p reported unnormalized
  kAbsoluteGap = 1u << 1,     // f_p = 0, gap reported unnormalized
  kAbsoluteRelChg = 1u << 2,  // previous iterate was zero
  kGapOmitted = 1u << 3,      // BP: no gap term
};

struct Diagnostics {
  double r_p = 0.0;  // ||Ax + mu y - b|| / ||b|| (primal residue)
  double r_d = 0.0;  // ||A^* y - z|| / sqrt(m) (dual residue)
  double gap = 0.0;  // |Delta| / f_p (duality gap)
  double res = 0.0;  // max of the three above
  double relchg = 0.0;
  double objective = 0.0;
  std::optional<double> relerr;  // percent
  unsigned flags = 0;
};

// Inputs for residual evaluation with the products A x and A^* y already
// available, so a solver can report diagnostics without extra matvecs.
struct ResidualInputs {
  const CVector& x;
  const CVector& y;
  const CVector& z;
  const CVector& ax;
  const CVector& aty;
  const CVector& b;
};

/// Primal residue, dual residue and duality gap of a (x, y, z) triple for
/// the BP / BPDN / QP families. For QP
///   r_p = Ax + mu y - b,  r_d = A^* y - z,
///   Delta = Re(b^* y) - mu ||y||^2 - ||x||_1,  f_p = ||x||_1 + mu ||y||^2 / 2.
/// BPDN uses the distance of Ax - b to the delta-ball as r_p and
/// Delta = Re(b^* y) - delta ||y|| - ||x||_1. BP has no gap term.
/// `objective` is filled with model_objective(); relchg/relerr are left 0.
Diagnostics compute_res(const ModelSpec& model, const ResidualInputs& in);
Diagnostics compute_res(const CVector& x, const CVector& y, const CVector& z, const SensingOperator& a,
                        const CVector& b, const ModelSpec& model);
Diagnostics compute_res(const CVector& x, const CVector& y, const CVector& z, const SensingOperator& a,
                        const CVector& b, double mu);

// Objective of the model at x given ax = A x. For L1L1 the objective is
// ||x||_1 + ||Ax - b||_1 / nu.
double model_objective(const ModelSpec& model, const CVector& x, const CVector& ax, const CVector& b);

/// ||x_new - x_old|| / ||x_old||; returns ||x_new|| when x_old = 0.
double relchg(const CVector& x_new, const CVector& x_old);

/// 100 * ||x - x_true|| / ||x_true||.
double relerr(const CVector& x, const CVector& x_true);

/// 20 log10(||b - mean(b)|| / ||p||); +inf for p = 0, -inf for constant b.
double snr_db(const CVector& b, const CVector& p);

/// The L1L1 model rewritten as BP in x_hat = (nu x; r):
///   A_hat = (A, nu I) / sqrt(1 + nu^2),  b_hat = nu b / sqrt(1 + nu^2).
struct L1L1Reformulation {
  std::shared_ptr<const AugmentedOperator> op;
  CVector b_hat;
  double nu = 0.0;
  Index n = 0;
  Index m = 0;

  CVector extract(const CVector& x_hat) const;
  CVector embed(const CVector& x, const CVector& r) const;
};

L1L1Reformulation reformulate_l1l1(OperatorPtr a, const CVector& b, double nu);

}  // namespace l1adm
