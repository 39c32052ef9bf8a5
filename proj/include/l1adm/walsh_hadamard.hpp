#pragma once

#include "l1adm/linalg.hpp"

#include <span>

namespace l1adm {

constexpr bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place unnormalized fast Walsh-Hadamard transform in natural
/// (Hadamard) ordering: out = H_n * in with H_n entries +-1.
/// H_n is symmetric and H_n * H_n = n I.
void fwht(std::span<Complex> data);

}  // namespace l1adm
