#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace l1adm {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A solver step produced NaN/Inf, normally from parameters outside the
// convergence region.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

bool all_finite(const CVector& v);

// Throws InvalidParameter naming `what` when v holds NaN or Inf.
void require_finite(const CVector& v, const std::string& what);

void require_length(const CVector& v, Index n, const std::string& what);

// Weighted l1 norm; empty weights mean all ones.
double l1_norm(const CVector& v, const RVector& weights = {});

// Real part of the Hermitian inner product u^* v.
inline double re_dot(const CVector& u, const CVector& v) { return u.dot(v).real(); }

CVector to_complex(const RVector& v);

}  // namespace l1adm
