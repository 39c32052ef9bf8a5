#include "l1adm/dadm.hpp"
#include "l1adm/harness.hpp"
#include "l1adm/padm.hpp"
#include "oracles/oracles.hpp"
#include "support/checks.hpp"

#include <gtest/gtest.h>

using namespace l1adm;
using namespace l1adm::test;

namespace {

SolverOptions tight(int max_iter = 200000)
{
  SolverOptions o;
  o.stop = StopRule::Res;
  o.eps = 1e-11;
  o.max_iter = max_iter;
  o.record_history = false;
  return o;
}

std::shared_ptr<DenseOperator> dense_from(const FrozenOracle& c)
{
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      c.a_rowmajor.data(), c.m, c.n);
  return std::make_shared<DenseOperator>(CMatrix(a.cast<Complex>()));
}

CVector vec(const std::vector<double>& v)
{
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size())).cast<Complex>();
}

}  // namespace

TEST(Padm, DefaultBeta)
{
  CVector b(4);
  b << 1.0, -2.0, Complex(0, 3), 2.0;
  EXPECT_DOUBLE_EQ(default_padm_beta(b), 8.0 / 8.0);
  EXPECT_DOUBLE_EQ(default_padm_beta(CVector::Zero(3)), 1.0);
}

TEST(Padm, StepGuardRejectsLargeSteps)
{
  auto const a = PartialWalshHadamard::random(64, 16, 1);
  EXPECT_NO_THROW(make_padm_params(*a, 1.0, 1.199, 0.8));
  // tau * lambda_max + gamma = 2.5
  EXPECT_THROW(make_padm_params(*a, 1.0, 1.2, 1.3), InvalidParameter);
  EXPECT_THROW(make_padm_params(*a, 1.0, 1.0, 1.0, 0.0, 0.0, true, 1.0), InvalidParameter);
  EXPECT_NO_THROW(make_padm_params(*a, 1.0, 1.2, 1.3, 0.0, 0.0, false));
  EXPECT_THROW(make_padm_params(*a, -1.0, 1.0, 0.5), InvalidParameter);

  SolverOptions o;
  o.tau = 1.3;
  o.gamma = 1.2;
  CVector const b = a->apply(gen_spikes(64, 3, 2));
  EXPECT_THROW(padm_solve(ModelSpec::bp(), *a, b, o), InvalidParameter);
}

TEST(Padm, QpOptimumIsAFixedPoint)
{
  auto const a = PartialDct::random(60, 20, 5);
  CVector const x_true = gen_spikes(60, 4, 6);
  Rng rng(3);
  CVector const b = a->apply(x_true) + 0.01 * random_cvector(rng, 20);
  double const mu = 0.01;
  RunRecord const ref = dadm_solve(ModelSpec::qp(mu), *a, b, tight());
  ASSERT_EQ(ref.status, RunStatus::Converged);
  CVector const y = (b - a->apply(ref.x)) / mu;

  PadmParams const p = make_padm_params(*a, default_padm_beta(b), 1.199, 0.8, mu, 0.0, true, 1.0);
  PadmState const s = make_padm_state(*a, ref.x, y);
  PadmState const next = padm_qp_step(s, *a, b, p);
  EXPECT_LE((next.x - s.x).norm(), 1e-9 * (1 + s.x.norm()));
  EXPECT_LE((next.y - s.y).norm(), 1e-9 * (1 + s.y.norm()));
  EXPECT_LE((next.r - mu * y).norm(), 1e-9 * (1 + mu * y.norm()));
}

TEST(Padm, ExactKktStateIsInvariant)
{
  // y with ||A^* y||_inf = 1, x aligned with the extremal entries of A^* y:
  // then (x, y) is optimal for BP with b = Ax and QP with b = Ax + mu y.
  auto const a = PartialDct::random(40, 12, 9);
  Rng rng(10);
  CVector y = random_cvector(rng, 12);
  CVector const z = a->apply_adjoint(y);
  y /= z.cwiseAbs().maxCoeff();
  CVector const zz = a->apply_adjoint(y);
  CVector x = CVector::Zero(40);
  for (Index i = 0; i < 40; ++i) {
    if (std::abs(zz[i]) > 1 - 1e-12) { x[i] = 2.0 * zz[i]; }
  }
  for (double mu : {0.0, 0.3}) {
    CVector const b = a->apply(x) + mu * y;
    PadmParams const p = make_padm_params(*a, 1.7, 1.1, 0.8, mu, 0.0, true, 1.0);
    PadmState const s = make_padm_state(*a, x, y);
    PadmState const next = mu > 0 ? padm_qp_step(s, *a, b, p) : padm_bp_step(s, *a, b, p);
    EXPECT_LE((next.x - x).norm(), 1e-12);
    EXPECT_LE((next.y - y).norm(), 1e-12);
  }
}

TEST(Padm, BasisPursuitMatchesLpOracle)
{
  for (const auto& c : bp_oracle_cases(20, 77)) {
    RunRecord const run = padm_solve(ModelSpec::bp(), *c.a, c.b, tight());
    EXPECT_LE((run.x - to_complex(c.x)).norm(), 1e-5) << "n=" << c.a->cols() << " m=" << c.a->rows();
  }
}

TEST(Padm, BpdnMatchesFrozenOracle)
{
  for (const auto& c : kFrozenOracles) {
    if (std::string(c.model) != "bpdn") { continue; }
    auto const a = dense_from(c);
    RunRecord const run = padm_solve(ModelSpec::bpdn(c.param), *a, vec(c.b), tight());
    EXPECT_LE((run.x - vec(c.x)).norm(), 1e-5) << c.param;
    EXPECT_NEAR(l1_norm(run.x), c.objective, 1e-6 * c.objective) << c.param;
  }
}

TEST(Padm, QpObjectiveMatchesDualSolver)
{
  auto const a = PartialWalshHadamard::random(128, 40, 3);
  CVector const x_true = gen_spikes(128, 5, 4);
  NoisyData const d = add_noise(a->apply(x_true), 0.01, 0.0, 5);
  ModelSpec const model = ModelSpec::qp(1e-2);
  RunRecord const p = padm_solve(model, *a, d.b, tight());
  RunRecord const q = dadm_solve(model, *a, d.b, tight());
  EXPECT_NEAR(p.final.objective, q.final.objective, 1e-6 * q.final.objective);
  EXPECT_EQ(p.status, RunStatus::Converged);
}

TEST(Padm, GNormDistanceDecreases)
{
  struct Steps {
    double tau, gamma;
  };
  std::vector<Steps> const steps = {{0.8, 1.199}, {0.5, 1.4}, {1.2, 0.7}, {0.3, 1.6}, {1.0, 0.95}};
  for (int inst = 0; inst < 10; ++inst) {
    auto const a = orthogonalized_gaussian(10, 30, derive_seed(500, inst));
    CVector const b = a->apply(gen_spikes(30, 3, derive_seed(501, inst))) +
                      add_noise(CVector::Zero(10), 0.02, 0.0, derive_seed(502, inst)).p_white;
    double const mu = 0.05;
    RunRecord const ref = dadm_solve(ModelSpec::qp(mu), *a, b, tight());
    ASSERT_LE(ref.final.res, 1e-10);
    CVector const x_ref = ref.x;
    CVector const y_ref = (b - a->apply(x_ref)) / mu;

    Steps const st = steps[static_cast<std::size_t>(inst) % steps.size()];
    PadmParams const p = make_padm_params(*a, default_padm_beta(b), st.gamma, st.tau, mu, 0.0, true, 1.0);
    double const eta = descent_eta(p);
    ASSERT_GT(eta, 0.0);
    PadmState s = make_padm_state(*a, CVector::Zero(30), CVector::Zero(10));
    double dist = g_norm_sq(s.x - x_ref, s.y - y_ref, p);
    for (int k = 0; k < 400; ++k) {
      PadmState const next = padm_qp_step(s, *a, b, p);
      double const next_dist = g_norm_sq(next.x - x_ref, next.y - y_ref, p);
      double const step = g_norm_sq(next.x - s.x, next.y - s.y, p);
      ASSERT_LE(next_dist, dist + 1e-9) << "instance " << inst << " k " << k;
      ASSERT_GE(dist - next_dist, eta * step - 1e-9) << "instance " << inst << " k " << k;
      dist = next_dist;
      s = next;
    }
  }
}

TEST(Padm, LooseToleranceStopsAfterOneIteration)
{
  auto const a = PartialDct::random(50, 20, 1);
  CVector const b = a->apply(gen_spikes(50, 3, 2));
  SolverOptions o;
  o.eps = 1e6;
  RunRecord const run = padm_solve(ModelSpec::bp(), *a, b, o);
  EXPECT_EQ(run.iterations, 1);
  EXPECT_EQ(run.history.size(), 1u);
  EXPECT_EQ(run.status, RunStatus::Converged);
}

TEST(Padm, CountsTwoProductsPerIteration)
{
  auto const a = PartialDct::random(50, 20, 1);
  CVector const b = a->apply(gen_spikes(50, 3, 2));
  SolverOptions o;
  o.max_iter = 7;
  o.eps = 1e-300;
  RunRecord const run = padm_solve(ModelSpec::qp(1e-3), *a, b, o);
  EXPECT_EQ(run.status, RunStatus::MaxIter);
  EXPECT_EQ(run.iterations, 7);
  EXPECT_EQ(run.aat, 14);
  ASSERT_EQ(run.history.size(), 7u);
  EXPECT_EQ(run.history.back().aat, 14);
}

TEST(Padm, RejectsUnsupportedModelsAndBadInput)
{
  auto const a = PartialDct::random(50, 20, 1);
  CVector const b = CVector::Ones(20);
  EXPECT_THROW(padm_solve(ModelSpec::l1l1(0.5), *a, b, {}), InvalidParameter);
  ModelSpec nn = ModelSpec::bp();
  nn.nonneg = true;
  EXPECT_THROW(padm_solve(nn, *a, b, {}), InvalidParameter);
  EXPECT_THROW(padm_solve(ModelSpec::bp(), *a, CVector::Ones(19), {}), DimensionMismatch);
}
