#pragma once

#include "l1adm/sensing_operator.hpp"

#include <cstdint>
#include <optional>

namespace l1adm {

/// k-sparse signal: positions uniform without replacement, values real
/// standard Gaussian. Requires 0 < k <= n.
CVector gen_spikes(Index n, Index k, std::uint64_t seed);

struct NoiseSpec {
  double sigma = 0.0;             // white noise standard deviation
  std::optional<double> snr_db;   // overrides sigma: target SNR(b_W) in dB
  double impulse_fraction = 0.0;  // share of entries replaced by +-1
};

struct NoisyData {
  CVector b;
  CVector p_white;
  CVector p_impulse;
  // Factor applied to b_clean before adding noise (1 unless impulses are
  // requested, then 1 / ||b_clean||_inf). Scale x_true by the same factor.
  double scale = 1.0;
};

/// b = s b_clean + p_W + p_I. With impulses, s normalizes ||s b_clean||_inf
/// to 1 and round(fraction m) entries of b_W are overwritten with +-1 at
/// random positions.
NoisyData add_noise(const CVector& b_clean, const NoiseSpec& noise, std::uint64_t seed);
NoisyData add_noise(const CVector& b_clean, double sigma, double impulse_fraction, std::uint64_t seed);

/// Rows of an m x n standard Gaussian matrix, orthonormalized (A A^* = I).
std::shared_ptr<DenseOperator> orthogonalized_gaussian(Index m, Index n, std::uint64_t seed);

/// Operator of the given kind with m random rows; Dense means an
/// orthogonalized Gaussian matrix.
OperatorPtr make_random_operator(OperatorKind kind, Index m, Index n, std::uint64_t seed);

struct ProblemInstance {
  OperatorPtr a;
  CVector b;
  CVector b_clean;  // A x_true (after scaling)
  CVector x_true;
  CVector p_white;
  CVector p_impulse;
  NoiseSpec noise;
  std::uint64_t seed = 0;
};

/// Operator, spikes and noise each draw from their own stream derived from
/// `seed`, so b is reproducible bit for bit.
ProblemInstance make_instance(OperatorKind kind, Index n, Index m, Index k, const NoiseSpec& noise,
                              std::uint64_t seed);

}  // namespace l1adm
