#pragma once

#include "l1adm/sensing_operator.hpp"

#include <cstdint>

namespace l1adm {

struct SpectralEstimate {
  double lambda_max = 0.0;  // largest eigenvalue of A^* A
  double tolerance = 0.0;
  int iterations_used = 0;
  bool converged = false;
};

/// Power iteration on A^* A from a seeded complex Gaussian start. Stops when
/// the relative change of the Rayleigh quotient drops below `tol`, or after
/// `max_iter` iterations (then converged = false). The Rayleigh quotient is a
/// lower bound on the true value.
SpectralEstimate estimate_lambda_max(const SensingOperator& op, double tol = 1e-6, int max_iter = 200,
                                     std::uint64_t seed = 0x5eed);

}  // namespace l1adm
