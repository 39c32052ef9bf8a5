#include "l1adm/linalg.hpp"

#include <cmath>

namespace l1adm {

bool all_finite(const CVector& v)
{
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) { return false; }
  }
  return true;
}

void require_finite(const CVector& v, const std::string& what)
{
  if (!all_finite(v)) { throw InvalidParameter(what + " contains non-finite entries"); }
}

void require_length(const CVector& v, Index n, const std::string& what)
{
  if (v.size() != n) {
    throw DimensionMismatch(what + ": expected length " + std::to_string(n) + ", got " +
                            std::to_string(v.size()));
  }
}

double l1_norm(const CVector& v, const RVector& weights)
{
  if (weights.size() == 0) { return v.cwiseAbs().sum(); }
  if (weights.size() != v.size()) { throw DimensionMismatch("weights: length does not match vector"); }
  return v.cwiseAbs().cwiseProduct(weights).sum();
}

CVector to_complex(const RVector& v) { return v.cast<Complex>(); }

}  // namespace l1adm
