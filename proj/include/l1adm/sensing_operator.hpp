#pragma once

#include "l1adm/linalg.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace l1adm {

enum class OperatorKind { Dense, PartialWalshHadamard, PartialDct, Augmented };

std::string_view to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(std::string_view name);

/// Matrix-free linear map A: C^n -> C^m with its adjoint.
///
/// Implementations are immutable after construction and may be shared
/// between threads. `orthonormal_rows()` is true only when A A^* = I holds
/// to working precision; the dual solvers depend on it.
class SensingOperator {
 public:
  virtual ~SensingOperator() = default;

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool orthonormal_rows() const { return orthonormal_; }
  OperatorKind kind() const { return kind_; }

  CVector apply(const CVector& x) const;
  CVector apply_adjoint(const CVector& y) const;

 protected:
  SensingOperator(OperatorKind kind, Index rows, Index cols, bool orthonormal);

  virtual CVector forward(const CVector& x) const = 0;
  virtual CVector adjoint(const CVector& y) const = 0;

 private:
  OperatorKind kind_;
  Index rows_;
  Index cols_;
  bool orthonormal_;
};

using OperatorPtr = std::shared_ptr<const SensingOperator>;

inline CVector apply(const SensingOperator& op, const CVector& x) { return op.apply(x); }
inline CVector apply_adjoint(const SensingOperator& op, const CVector& y) { return op.apply_adjoint(y); }

// Explicit matrix. Orthonormality of the rows is detected on construction
// (||A A^* - I||_F <= 1e-10).
class DenseOperator final : public SensingOperator {
 public:
  explicit DenseOperator(CMatrix matrix);

  const CMatrix& matrix() const { return matrix_; }

 protected:
  CVector forward(const CVector& x) const override;
  CVector adjoint(const CVector& y) const override;

 private:
  CMatrix matrix_;
  Eigen::MatrixXd real_;  // copy of a purely real matrix_, for the cheaper real products
};

// Shared state of the randomized partial transforms A = P T D / scale: a
// column sign flip D (optional), an orthonormal transform T, and the
// selection P of `row_indices`.
class PartialTransform : public SensingOperator {
 public:
  const std::vector<Index>& row_indices() const { return rows_; }
  std::optional<std::uint64_t> sign_seed() const { return sign_seed_; }

 protected:
  PartialTransform(OperatorKind kind, Index n, std::vector<Index> rows,
                   std::optional<std::uint64_t> sign_seed);

  CVector forward(const CVector& x) const override;
  CVector adjoint(const CVector& y) const override;

  // Full orthonormal transform and its inverse (= adjoint), length n.
  virtual void transform(CVector& v) const = 0;
  virtual void inverse_transform(CVector& v) const = 0;

 private:
  std::vector<Index> rows_;
  std::optional<std::uint64_t> sign_seed_;
  RVector signs_;  // empty when no sign flip is applied
};

/// Rows of the n x n Walsh-Hadamard matrix (natural ordering) scaled by
/// 1/sqrt(n), after an optional random +-1 column flip. n must be a power
/// of two. Forward and adjoint cost O(n log n).
class PartialWalshHadamard final : public PartialTransform {
 public:
  PartialWalshHadamard(Index n, std::vector<Index> rows, std::optional<std::uint64_t> sign_seed);

  // m rows drawn uniformly without replacement; sign flip seeded from the
  // same seed.
  static std::shared_ptr<PartialWalshHadamard> random(Index n, Index m, std::uint64_t seed);

 protected:
  void transform(CVector& v) const override;
  void inverse_transform(CVector& v) const override;
};

/// Rows of the orthonormal DCT-II matrix after an optional random +-1
/// column flip. Any n >= 1.
class PartialDct final : public PartialTransform {
 public:
  PartialDct(Index n, std::vector<Index> rows, std::optional<std::uint64_t> sign_seed);
  ~PartialDct() override;

  static std::shared_ptr<PartialDct> random(Index n, Index m, std::uint64_t seed);

 protected:
  void transform(CVector& v) const override;
  void inverse_transform(CVector& v) const override;

 private:
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// A_hat = (A, nu I) / sqrt(1 + nu^2), acting on stacked (x; r) of length
/// n + m.
class AugmentedOperator final : public SensingOperator {
 public:
  AugmentedOperator(OperatorPtr base, double nu);

  const OperatorPtr& base() const { return base_; }
  double nu() const { return nu_; }

 protected:
  CVector forward(const CVector& x) const override;
  CVector adjoint(const CVector& y) const override;

 private:
  OperatorPtr base_;
  double nu_;
  double scale_;
};

std::shared_ptr<const AugmentedOperator> build_augmented(OperatorPtr op, double nu);

// Dense m x n matrix of the operator, built column by column from apply().
CMatrix materialize(const SensingOperator& op);

}  // namespace l1adm
