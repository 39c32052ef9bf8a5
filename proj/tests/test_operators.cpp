#include "l1adm/harness.hpp"
#include "l1adm/sensing_operator.hpp"
#include "l1adm/spectral.hpp"
#include "l1adm/walsh_hadamard.hpp"
#include "support/checks.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

using namespace l1adm;
using l1adm::test::random_cvector;

namespace {

std::vector<OperatorPtr> sample_operators(std::uint64_t seed)
{
  return {
      PartialWalshHadamard::random(64, 20, seed),
      std::make_shared<PartialWalshHadamard>(32, std::vector<Index>{0, 3, 7, 31}, std::nullopt),
      PartialDct::random(50, 17, seed),
      PartialDct::random(1, 1, seed),
      std::make_shared<PartialDct>(12, std::vector<Index>{11, 0, 5}, 99u),
      orthogonalized_gaussian(9, 23, seed),
      build_augmented(PartialDct::random(30, 10, seed), 0.7),
  };
}

}  // namespace

TEST(Operators, AdjointIdentityHoldsOnRandomPairs)
{
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    for (const auto& op : sample_operators(derive_seed(11, trial))) {
      CVector const x = random_cvector(rng, op->cols());
      CVector const y = random_cvector(rng, op->rows());
      Complex const lhs = op->apply(x).dot(y);
      Complex const rhs = x.dot(op->apply_adjoint(y));
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * x.norm() * y.norm()) << to_string(op->kind());
    }
  }
}

TEST(Operators, TransformsHaveOrthonormalRows)
{
  for (const auto& op : sample_operators(3)) {
    CMatrix const a = materialize(*op);
    ASSERT_EQ(a.rows(), op->rows());
    ASSERT_EQ(a.cols(), op->cols());
    CMatrix const gram = a * a.adjoint();
    EXPECT_LE((gram - CMatrix::Identity(a.rows(), a.rows())).norm(), 1e-12) << to_string(op->kind());
    EXPECT_TRUE(op->orthonormal_rows());
  }
}

TEST(Operators, WalshHadamardMatchesSylvesterConstruction)
{
  Index const n = 16;
  Eigen::MatrixXd h = Eigen::MatrixXd::Ones(1, 1);
  while (h.rows() < n) {
    Eigen::MatrixXd next(2 * h.rows(), 2 * h.cols());
    next << h, h, h, -h;
    h = next;
  }
  std::vector<Index> rows(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) { rows[static_cast<std::size_t>(i)] = i; }
  PartialWalshHadamard const op(n, rows, std::nullopt);
  CMatrix const a = materialize(op);
  EXPECT_LE((a.real() - h / std::sqrt(double(n))).norm(), 1e-13);
  EXPECT_LE(a.imag().norm(), 0.0);
}

TEST(Operators, FwhtTwiceScalesByLength)
{
  Rng rng(5);
  CVector v = random_cvector(rng, 128);
  CVector const original = v;
  fwht({v.data(), static_cast<std::size_t>(v.size())});
  fwht({v.data(), static_cast<std::size_t>(v.size())});
  EXPECT_LE((v / 128.0 - original).norm(), 1e-12 * original.norm());
}

TEST(Operators, DctRowsMatchCosineFormula)
{
  Index const n = 10;
  std::vector<Index> rows = {0, 1, 4, 9};
  PartialDct const op(n, rows, std::nullopt);
  CMatrix const a = materialize(op);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double const k = static_cast<double>(rows[r]);
    double const scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
    for (Index j = 0; j < n; ++j) {
      double const expected = scale * std::cos(M_PI * k * (2.0 * j + 1.0) / (2.0 * n));
      EXPECT_NEAR(a(static_cast<Index>(r), j).real(), expected, 1e-13);
    }
  }
}

TEST(Operators, SignFlipIsSeededAndColumnwise)
{
  std::vector<Index> rows = {1, 2, 6};
  PartialWalshHadamard const plain(8, rows, std::nullopt);
  PartialWalshHadamard const flipped(8, rows, 42u);
  PartialWalshHadamard const again(8, rows, 42u);
  CMatrix const p = materialize(plain);
  CMatrix const f = materialize(flipped);
  EXPECT_EQ(f, materialize(again));
  for (Index j = 0; j < 8; ++j) {
    double const ratio = (f.col(j).real().array() / p.col(j).real().array()).mean();
    EXPECT_NEAR(std::abs(ratio), 1.0, 1e-14);
    EXPECT_LE((f.col(j) - ratio * p.col(j)).norm(), 1e-14);
  }
}

TEST(Operators, AugmentedOperatorMatchesBlockMatrix)
{
  auto const base = orthogonalized_gaussian(4, 7, 1);
  double const nu = 0.3;
  auto const aug = build_augmented(base, nu);
  CMatrix expected(4, 11);
  expected << base->matrix(), nu * CMatrix::Identity(4, 4);
  expected /= std::sqrt(1 + nu * nu);
  EXPECT_LE((materialize(*aug) - expected).norm(), 1e-14);
  EXPECT_EQ(aug->cols(), 11);
}

TEST(Operators, DenseRealAndComplexPathsAgree)
{
  auto const real_op = orthogonalized_gaussian(5, 9, 2);
  CMatrix const m = real_op->matrix();
  CMatrix perturbed = m;
  perturbed(0, 0) += Complex(0.0, 1e-3);
  DenseOperator const complex_op(perturbed);
  Rng rng(4);
  CVector const x = random_cvector(rng, 9);
  CVector const y = random_cvector(rng, 5);
  EXPECT_LE((real_op->apply(x) - m * x).norm(), 1e-13);
  EXPECT_LE((real_op->apply_adjoint(y) - m.adjoint() * y).norm(), 1e-13);
  EXPECT_LE((complex_op.apply(x) - perturbed * x).norm(), 1e-13);
  EXPECT_FALSE(complex_op.orthonormal_rows());
  EXPECT_TRUE(real_op->orthonormal_rows());
}

TEST(Operators, RejectsBadInput)
{
  EXPECT_THROW(PartialWalshHadamard(12, {0}, std::nullopt), InvalidParameter);
  EXPECT_THROW(PartialDct(8, {8}, std::nullopt), InvalidParameter);
  EXPECT_THROW(PartialDct(8, {1, 1}, std::nullopt), InvalidParameter);
  auto const op = PartialDct::random(8, 3, 1);
  EXPECT_THROW(op->apply(CVector::Zero(7)), DimensionMismatch);
  EXPECT_THROW(op->apply_adjoint(CVector::Zero(8)), DimensionMismatch);
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(DenseOperator{bad}, InvalidParameter);
  EXPECT_THROW(build_augmented(op, 0.0), InvalidParameter);
}

TEST(Spectral, PowerIterationMatchesEigenSolver)
{
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix a(6, 15);
    for (Index i = 0; i < a.size(); ++i) { a.data()[i] = Complex(rng.normal(), rng.normal()); }
    DenseOperator const op(a);
    SpectralEstimate const est = estimate_lambda_max(op, 1e-12, 5000, 1 + trial);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(a * a.adjoint());
    double const exact = eig.eigenvalues().maxCoeff();
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.lambda_max, exact, 1e-6 * exact);
    EXPECT_LE(est.lambda_max, exact * (1 + 1e-12));
  }
}

TEST(Spectral, OrthonormalRowsGiveOne)
{
  auto const op = PartialWalshHadamard::random(256, 64, 3);
  EXPECT_NEAR(estimate_lambda_max(*op).lambda_max, 1.0, 1e-6);
}
