#include "l1adm/harness.hpp"

#include "l1adm/rng.hpp"

#include <Eigen/QR>
#include <cmath>

namespace l1adm {

namespace {

// Stream ids under an instance seed.
constexpr std::uint64_t kOperatorStream = 0;
constexpr std::uint64_t kSignalStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

CVector centered(const CVector& v)
{
  return v.array() - v.mean();
}

// Scale c > 0 with SNR(b + c g) = snr_db, where SNR(b) = 20 log10(||b - E b|| / ||c g||).
double white_noise_scale(const CVector& b, const CVector& g, double snr_db)
{
  double const ratio = std::pow(10.0, snr_db / 20.0);
  CVector const u = centered(b);
  CVector const v = centered(g);
  double const qa = v.squaredNorm() - ratio * ratio * g.squaredNorm();
  double const qb = 2.0 * re_dot(u, v);
  double const qc = u.squaredNorm();
  if (qa < 0.0) {
    return (-qb - std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
  }
  // SNR near or below 0 dB: fall back to the clean-signal ratio
  return std::sqrt(qc) / (ratio * g.norm());
}

}  // namespace

CVector gen_spikes(Index n, Index k, std::uint64_t seed)
{
  if (n < 1) { throw InvalidParameter("gen_spikes: n must be positive"); }
  if (k < 1 || k > n) { throw InvalidParameter("gen_spikes: need 0 < k <= n"); }
  Rng rng(seed);
  CVector x = CVector::Zero(n);
  for (Index i : rng.sample_without_replacement(n, k)) { x[i] = rng.normal(); }
  return x;
}

NoisyData add_noise(const CVector& b_clean, const NoiseSpec& noise, std::uint64_t seed)
{
  if (noise.sigma < 0.0) { throw InvalidParameter("add_noise: sigma must be >= 0"); }
  if (!(noise.impulse_fraction >= 0.0 && noise.impulse_fraction <= 1.0)) {
    throw InvalidParameter("add_noise: impulse fraction must lie in [0, 1]");
  }
  require_finite(b_clean, "b_clean");
  Index const m = b_clean.size();

  NoisyData out;
  out.b = b_clean;
  if (noise.impulse_fraction > 0.0) {
    double const peak = b_clean.cwiseAbs().maxCoeff();
    if (peak > 0.0) {
      out.scale = 1.0 / peak;
      out.b *= out.scale;
    }
  }

  Rng white(derive_seed(seed, 0));
  out.p_white = CVector::Zero(m);
  if (noise.snr_db) {
    CVector const g = to_complex(white.normal_vector(m));
    if (g.norm() > 0.0) { out.p_white = white_noise_scale(out.b, g, *noise.snr_db) * g; }
  } else if (noise.sigma > 0.0) {
    out.p_white = noise.sigma * to_complex(white.normal_vector(m));
  }
  out.b += out.p_white;

  out.p_impulse = CVector::Zero(m);
  auto const count = static_cast<Index>(std::llround(noise.impulse_fraction * static_cast<double>(m)));
  if (count > 0) {
    Rng impulses(derive_seed(seed, 1));
    for (Index i : impulses.sample_without_replacement(m, count)) {
      Complex const value = impulses.sign();
      out.p_impulse[i] = value - out.b[i];
      out.b[i] = value;
    }
  }
  return out;
}

NoisyData add_noise(const CVector& b_clean, double sigma, double impulse_fraction, std::uint64_t seed)
{
  return add_noise(b_clean, NoiseSpec{sigma, std::nullopt, impulse_fraction}, seed);
}

std::shared_ptr<DenseOperator> orthogonalized_gaussian(Index m, Index n, std::uint64_t seed)
{
  if (m < 1 || m > n) { throw InvalidParameter("orthogonalized_gaussian: need 0 < m <= n"); }
  Rng rng(seed);
  Eigen::MatrixXd gaussian_t(n, m);  // transpose, so its columns are the rows
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < n; ++i) { gaussian_t(i, j) = rng.normal(); }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_t);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
  return std::make_shared<DenseOperator>(q.transpose().cast<Complex>());
}

OperatorPtr make_random_operator(OperatorKind kind, Index m, Index n, std::uint64_t seed)
{
  switch (kind) {
  case OperatorKind::PartialWalshHadamard: return PartialWalshHadamard::random(n, m, seed);
  case OperatorKind::PartialDct: return PartialDct::random(n, m, seed);
  case OperatorKind::Dense: return orthogonalized_gaussian(m, n, seed);
  case OperatorKind::Augmented: break;
  }
  throw InvalidParameter("make_random_operator: augmented operators are built from a base operator");
}

ProblemInstance make_instance(OperatorKind kind, Index n, Index m, Index k, const NoiseSpec& noise,
                              std::uint64_t seed)
{
  ProblemInstance inst;
  inst.seed = seed;
  inst.noise = noise;
  inst.a = make_random_operator(kind, m, n, derive_seed(seed, kOperatorStream));
  inst.x_true = gen_spikes(n, k, derive_seed(seed, kSignalStream));
  CVector const b_clean = inst.a->apply(inst.x_true);
  NoisyData data = add_noise(b_clean, noise, derive_seed(seed, kNoiseStream));
  inst.x_true *= data.scale;
  inst.b_clean = b_clean * data.scale;
  inst.b = std::move(data.b);
  inst.p_white = std::move(data.p_white);
  inst.p_impulse = std::move(data.p_impulse);
  return inst;
}

}  // namespace l1adm
