#pragma once

#include "l1adm/solver.hpp"

#include <chrono>

namespace l1adm::detail {

void require_step_finite(const CVector& x, const CVector& y, const char* solver);

// Appends one history row (when enabled) and reports whether the stop rule
// holds.
bool record_iteration(RunRecord& run, const SolverOptions& opts, int k, const Diagnostics& d);

void check_options(const SolverOptions& opts);

class Stopwatch {
 public:
  double seconds() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace l1adm::detail
