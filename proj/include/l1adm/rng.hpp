#pragma once

#include "l1adm/linalg.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace l1adm {

// Seeded generator with platform-independent derived distributions.
// The std:: distributions are implementation-defined, so normals and
// index sampling are computed here from raw mt19937_64 output to keep
// artifacts bit-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Standard normal via Box-Muller.
  double normal();

  double sign() { return (next_u64() >> 63) != 0 ? 1.0 : -1.0; }

  // Uniform on [0, n).
  Index uniform_index(Index n);

  // k distinct indices in [0, n), in selection order (partial Fisher-Yates).
  std::vector<Index> sample_without_replacement(Index n, Index k);

  RVector normal_vector(Index n);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// SplitMix64 mix of (seed, stream); used to give each trial / component an
// independent stream derived from one recorded master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace l1adm
