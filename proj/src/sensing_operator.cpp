#include "l1adm/sensing_operator.hpp"

#include "l1adm/rng.hpp"
#include "l1adm/walsh_hadamard.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <set>

namespace l1adm {

namespace {

// The FFTW planner is not thread-safe; plan execution with explicit arrays is.
std::mutex& fftw_planner_mutex()
{
  static std::mutex m;
  return m;
}

constexpr double kOrthonormalTolerance = 1e-10;

}  // namespace

std::string_view to_string(OperatorKind kind)
{
  switch (kind) {
  case OperatorKind::Dense: return "dense";
  case OperatorKind::PartialWalshHadamard: return "partial-walsh-hadamard";
  case OperatorKind::PartialDct: return "partial-dct";
  case OperatorKind::Augmented: return "augmented";
  }
  return "unknown";
}

OperatorKind operator_kind_from_string(std::string_view name)
{
  if (name == "dense") { return OperatorKind::Dense; }
  if (name == "partial-walsh-hadamard" || name == "wht") { return OperatorKind::PartialWalshHadamard; }
  if (name == "partial-dct" || name == "dct") { return OperatorKind::PartialDct; }
  if (name == "augmented") { return OperatorKind::Augmented; }
  throw InvalidParameter("unknown operator kind '" + std::string(name) + "'");
}

SensingOperator::SensingOperator(OperatorKind kind, Index rows, Index cols, bool orthonormal)
  : kind_(kind), rows_(rows), cols_(cols), orthonormal_(orthonormal)
{
  if (rows <= 0 || cols <= 0) { throw InvalidParameter("operator dimensions must be positive"); }
}

CVector SensingOperator::apply(const CVector& x) const
{
  require_length(x, cols_, "apply");
  return forward(x);
}

CVector SensingOperator::apply_adjoint(const CVector& y) const
{
  require_length(y, rows_, "apply_adjoint");
  return adjoint(y);
}

// ---------------------------------------------------------------------------
// Dense

namespace {
bool has_orthonormal_rows(const CMatrix& a)
{
  CMatrix gram = a * a.adjoint();
  gram -= CMatrix::Identity(a.rows(), a.rows());
  return gram.norm() <= kOrthonormalTolerance;
}
}  // namespace

DenseOperator::DenseOperator(CMatrix matrix)
  : SensingOperator(OperatorKind::Dense, matrix.rows(), matrix.cols(), has_orthonormal_rows(matrix)),
    matrix_(std::move(matrix))
{
  if (!matrix_.allFinite()) { throw InvalidParameter("dense operator contains non-finite entries"); }
  if (matrix_.imag().isZero(0.0)) { real_ = matrix_.real(); }
}

CVector DenseOperator::forward(const CVector& x) const
{
  if (real_.size() == 0) { return matrix_ * x; }
  CVector out(rows());
  out.real() = real_ * x.real();
  out.imag() = real_ * x.imag();
  return out;
}

CVector DenseOperator::adjoint(const CVector& y) const
{
  if (real_.size() == 0) { return matrix_.adjoint() * y; }
  CVector out(cols());
  out.real() = real_.transpose() * y.real();
  out.imag() = real_.transpose() * y.imag();
  return out;
}

// ---------------------------------------------------------------------------
// Partial transforms

PartialTransform::PartialTransform(OperatorKind kind, Index n, std::vector<Index> rows,
                                   std::optional<std::uint64_t> sign_seed)
  : SensingOperator(kind, static_cast<Index>(rows.size()), n, true),
    rows_(std::move(rows)),
    sign_seed_(sign_seed)
{
  std::set<Index> seen;
  for (Index r : rows_) {
    if (r < 0 || r >= n) { throw InvalidParameter("row index out of range"); }
    if (!seen.insert(r).second) { throw InvalidParameter("duplicate row index " + std::to_string(r)); }
  }
  if (sign_seed_) {
    Rng rng(derive_seed(*sign_seed_, 1));
    signs_.resize(n);
    for (Index i = 0; i < n; ++i) { signs_[i] = rng.sign(); }
  }
}

CVector PartialTransform::forward(const CVector& x) const
{
  CVector full = signs_.size() > 0 ? CVector(x.cwiseProduct(to_complex(signs_))) : x;
  transform(full);
  CVector out(rows());
  for (std::size_t i = 0; i < rows_.size(); ++i) { out[static_cast<Index>(i)] = full[rows_[i]]; }
  return out;
}

CVector PartialTransform::adjoint(const CVector& y) const
{
  CVector full = CVector::Zero(cols());
  for (std::size_t i = 0; i < rows_.size(); ++i) { full[rows_[i]] = y[static_cast<Index>(i)]; }
  inverse_transform(full);
  if (signs_.size() > 0) { full = full.cwiseProduct(to_complex(signs_)); }
  return full;
}

namespace {
std::vector<Index> random_rows(Index n, Index m, std::uint64_t seed)
{
  if (m <= 0 || m > n) { throw InvalidParameter("need 0 < m <= n for a partial transform"); }
  Rng rng(derive_seed(seed, 0));
  return rng.sample_without_replacement(n, m);
}
}  // namespace

PartialWalshHadamard::PartialWalshHadamard(Index n, std::vector<Index> rows,
                                           std::optional<std::uint64_t> sign_seed)
  : PartialTransform(OperatorKind::PartialWalshHadamard, n, std::move(rows), sign_seed)
{
  if (!is_power_of_two(n)) {
    throw InvalidParameter("partial Walsh-Hadamard operator requires n to be a power of two, got " +
                           std::to_string(n));
  }
}

std::shared_ptr<PartialWalshHadamard> PartialWalshHadamard::random(Index n, Index m, std::uint64_t seed)
{
  if (!is_power_of_two(n)) {
    throw InvalidParameter("partial Walsh-Hadamard operator requires n to be a power of two, got " +
                           std::to_string(n));
  }
  return std::make_shared<PartialWalshHadamard>(n, random_rows(n, m, seed), seed);
}

void PartialWalshHadamard::transform(CVector& v) const
{
  fwht(std::span<Complex>(v.data(), static_cast<std::size_t>(v.size())));
  v /= std::sqrt(static_cast<double>(v.size()));
}

void PartialWalshHadamard::inverse_transform(CVector& v) const { transform(v); }

// DCT-II / DCT-III through FFTW's REDFT10 / REDFT01, rescaled to the
// orthonormal pair. Real and imaginary parts are transformed separately.
struct PartialDct::Plans {
  fftw_plan dct2 = nullptr;
  fftw_plan dct3 = nullptr;
  Index n = 0;

  explicit Plans(Index len) : n(len)
  {
    std::vector<double> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
    std::lock_guard lock(fftw_planner_mutex());
    int const size = static_cast<int>(n);
    unsigned const flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    dct2 = fftw_plan_r2r_1d(size, in.data(), out.data(), FFTW_REDFT10, flags);
    dct3 = fftw_plan_r2r_1d(size, in.data(), out.data(), FFTW_REDFT01, flags);
    if (dct2 == nullptr || dct3 == nullptr) { throw Error("FFTW failed to create DCT plans"); }
  }

  ~Plans()
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(dct2);
    fftw_destroy_plan(dct3);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  void run(fftw_plan plan, CVector& v, bool forward) const
  {
    auto const len = static_cast<std::size_t>(n);
    std::vector<double> in(len), out(len);
    double const dc = std::sqrt(1.0 / static_cast<double>(n));
    double const ac = std::sqrt(0.5 / static_cast<double>(n));
    for (int part = 0; part < 2; ++part) {
      for (std::size_t i = 0; i < len; ++i) {
        in[i] = part == 0 ? v[static_cast<Index>(i)].real() : v[static_cast<Index>(i)].imag();
      }
      if (!forward) {
        in[0] *= dc;
        for (std::size_t i = 1; i < len; ++i) { in[i] *= ac; }
      }
      fftw_execute_r2r(plan, in.data(), out.data());
      if (forward) {
        out[0] *= 0.5 * dc;
        for (std::size_t i = 1; i < len; ++i) { out[i] *= ac; }
      }
      for (std::size_t i = 0; i < len; ++i) {
        auto& entry = v[static_cast<Index>(i)];
        entry = part == 0 ? Complex(out[i], entry.imag()) : Complex(entry.real(), out[i]);
      }
    }
  }
};

PartialDct::PartialDct(Index n, std::vector<Index> rows, std::optional<std::uint64_t> sign_seed)
  : PartialTransform(OperatorKind::PartialDct, n, std::move(rows), sign_seed),
    plans_(std::make_unique<Plans>(n))
{
}

PartialDct::~PartialDct() = default;

std::shared_ptr<PartialDct> PartialDct::random(Index n, Index m, std::uint64_t seed)
{
  return std::make_shared<PartialDct>(n, random_rows(n, m, seed), seed);
}

void PartialDct::transform(CVector& v) const { plans_->run(plans_->dct2, v, true); }

void PartialDct::inverse_transform(CVector& v) const { plans_->run(plans_->dct3, v, false); }

// ---------------------------------------------------------------------------
// Augmented

AugmentedOperator::AugmentedOperator(OperatorPtr base, double nu)
  : SensingOperator(OperatorKind::Augmented, base ? base->rows() : 1,
                    base ? base->cols() + base->rows() : 1, base && base->orthonormal_rows()),
    base_(std::move(base)),
    nu_(nu),
    scale_(1.0 / std::sqrt(1.0 + nu * nu))
{
  if (!base_) { throw InvalidParameter("augmented operator needs a base operator"); }
  if (!(nu > 0.0) || !std::isfinite(nu)) { throw InvalidParameter("augmented operator requires nu > 0"); }
}

CVector AugmentedOperator::forward(const CVector& x) const
{
  Index const n = base_->cols();
  Index const m = base_->rows();
  CVector out = base_->apply(x.head(n));
  out += nu_ * x.tail(m);
  out *= scale_;
  return out;
}

CVector AugmentedOperator::adjoint(const CVector& y) const
{
  Index const n = base_->cols();
  Index const m = base_->rows();
  CVector out(n + m);
  out.head(n) = base_->apply_adjoint(y) * scale_;
  out.tail(m) = y * (nu_ * scale_);
  return out;
}

std::shared_ptr<const AugmentedOperator> build_augmented(OperatorPtr op, double nu)
{
  return std::make_shared<AugmentedOperator>(std::move(op), nu);
}

CMatrix materialize(const SensingOperator& op)
{
  CMatrix out(op.rows(), op.cols());
  CVector e = CVector::Zero(op.cols());
  for (Index j = 0; j < op.cols(); ++j) {
    e[j] = 1.0;
    out.col(j) = op.apply(e);
    e[j] = 0.0;
  }
  return out;
}

}  // namespace l1adm
