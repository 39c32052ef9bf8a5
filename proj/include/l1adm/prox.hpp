#pragma once

#include "l1adm/linalg.hpp"

namespace l1adm {

/// Componentwise soft threshold: magnitude max(|v_i| - t_i, 0), phase of v_i.
/// sign(0) = 0, so zero entries stay zero.
CVector shrink(const CVector& v, double t);
CVector shrink(const CVector& v, const RVector& t);

/// Projection onto {xi : |xi_i| <= w_i}; empty w means unit radii.
CVector project_linf_ball(const CVector& v, const RVector& w = {});

/// Projection onto the Euclidean ball of radius delta.
CVector project_l2_ball(const CVector& v, double delta);

/// v - project_l2_ball(v, t): group soft threshold of the whole vector.
CVector shrink_l2(const CVector& v, double t);

/// Projection onto F = {z : Re(z_i) <= w_i}; imaginary parts are untouched.
CVector project_halfspace_F(const CVector& v, const RVector& w = {});

/// Feasible set for the auxiliary dual variable z: components
/// [0, halfspace_count) live in the half-space Re(z_i) <= w_i (nonnegative
/// signals), the rest in the ball |z_i| <= w_i. Empty radii mean all ones.
struct DualSet {
  RVector radii;
  Index halfspace_count = 0;

  CVector project(const CVector& v) const;
  bool contains(const CVector& v, double slack = 0.0) const;
};

}  // namespace l1adm
