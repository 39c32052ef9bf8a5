#include "l1adm/baselines.hpp"
#include "l1adm/dadm.hpp"
#include "l1adm/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace l1adm;

TEST(Fista, MomentumSequence)
{
  double t = 1.0;
  t = fista_t_next(t);
  EXPECT_NEAR(t, (1 + std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_NEAR(t, 1.618034, 5e-7);
  t = fista_t_next(t);
  EXPECT_NEAR(t, 2.193527, 5e-7);
  for (int k = 0; k < 100; ++k) {
    double const next = fista_t_next(t);
    EXPECT_NEAR(next * next - next, t * t, 1e-9 * t * t);
    t = next;
  }
}

TEST(Fista, FirstStepHasNoMomentum)
{
  auto const a = PartialDct::random(60, 20, 1);
  CVector const b = a->apply(gen_spikes(60, 4, 2));
  FistaState const s0 = make_fista_state(*a, a->apply_adjoint(b));
  FistaState const f = fista_step(s0, *a, b, 1e-2, 1.0);
  FistaState const i = ist_step(s0, *a, b, 1e-2, 1.0);
  EXPECT_EQ(f.x, i.x);
  EXPECT_DOUBLE_EQ(f.t, 1.618033988749895);
  EXPECT_DOUBLE_EQ(i.t, 1.0);
}

TEST(Fista, ThresholdConventions)
{
  // A = I on one coordinate, x = 0, b = 5: v = tau b.
  CMatrix m = CMatrix::Identity(1, 1);
  DenseOperator const a(m);
  CVector b(1);
  b << 5.0;
  FistaState const s = make_fista_state(a, CVector::Zero(1));
  double const mu = 0.5;
  double const tau = 1.0;
  EXPECT_DOUBLE_EQ(ist_step(s, a, b, mu, tau, ShrinkConvention::Consistent).x[0].real(), 5.0 - tau * mu);
  EXPECT_DOUBLE_EQ(ist_step(s, a, b, mu, tau, ShrinkConvention::Literal).x[0].real(), 5.0 - tau / mu);
}

TEST(Fista, ReachesDualSolverObjective)
{
  auto const a = PartialWalshHadamard::random(64, 24, 3);
  CVector const x_true = gen_spikes(64, 4, 4);
  NoisyData const d = add_noise(a->apply(x_true), 0.01, 0.0, 5);
  ModelSpec const model = ModelSpec::qp(1e-2);
  SolverOptions o;
  o.stop = StopRule::Res;
  o.eps = 1e-11;
  o.max_iter = 100000;
  o.record_history = false;
  RunRecord const ref = dadm_solve(model, a, d.b, o);
  o.max_iter = 10000;
  o.eps = 1e-300;
  o.x0 = a->apply_adjoint(d.b);
  RunRecord const f = fista_solve(model, *a, d.b, o);
  RunRecord const i = ist_solve(model, *a, d.b, o);
  EXPECT_NEAR(f.final.objective, ref.final.objective, 1e-4 * ref.final.objective);
  EXPECT_NEAR(i.final.objective, ref.final.objective, 1e-4 * ref.final.objective);
  EXPECT_EQ(f.aat, 2 * 10000 + 1);
}

TEST(Fista, QpOnly)
{
  auto const a = PartialDct::random(20, 8, 1);
  CVector const b = CVector::Ones(8);
  EXPECT_THROW(fista_solve(ModelSpec::bp(), *a, b, {}), InvalidParameter);
  EXPECT_THROW(ist_solve(ModelSpec::bpdn(0.1), *a, b, {}), InvalidParameter);
  FistaState const s = make_fista_state(*a, CVector::Zero(20));
  EXPECT_THROW(fista_step(s, *a, b, 0.0, 1.0), InvalidParameter);
}
