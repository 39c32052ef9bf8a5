#include "l1adm/spectral.hpp"

#include "l1adm/rng.hpp"

#include <cmath>

namespace l1adm {

SpectralEstimate estimate_lambda_max(const SensingOperator& op, double tol, int max_iter, std::uint64_t seed)
{
  if (!(tol > 0.0)) { throw InvalidParameter("estimate_lambda_max: tol must be positive"); }
  if (max_iter < 1) { throw InvalidParameter("estimate_lambda_max: max_iter must be at least 1"); }

  Rng rng(seed);
  CVector v(op.cols());
  for (Index i = 0; i < v.size(); ++i) { v[i] = Complex(rng.normal(), rng.normal()); }
  v.normalize();

  SpectralEstimate est;
  est.tolerance = tol;
  double previous = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    CVector const av = op.apply(v);
    double const rayleigh = av.squaredNorm();  // v^* A^* A v with ||v|| = 1
    est.lambda_max = rayleigh;
    est.iterations_used = it;
    if (rayleigh == 0.0) {
      est.converged = true;
      break;
    }
    if (it > 1 && std::abs(rayleigh - previous) <= tol * rayleigh) {
      est.converged = true;
      break;
    }
    previous = rayleigh;
    v = op.apply_adjoint(av);
    v /= v.norm();
  }
  return est;
}

}  // namespace l1adm
