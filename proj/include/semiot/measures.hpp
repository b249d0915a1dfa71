#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "semiot/matrix.hpp"

namespace semiot {

/// Marginal tolerance used by plan validation.
inline constexpr double kMassTolerance = 1e-9;
/// Largest accepted gap between source and target total mass.
inline constexpr double kBalanceTolerance = 1e-6;

/// Weighted point set: n points in R^d with nonnegative masses.
///
/// Points are kept as an n x d row-major matrix. Construction validates
/// that d >= 1, that every coordinate is finite and that masses are
/// nonnegative with at least one positive entry. Immutable afterwards.
class DiscreteMeasure {
 public:
  DiscreteMeasure(Matrix points, std::vector<double> masses);

  /// Equal masses 1/n on every point.
  static DiscreteMeasure uniform(Matrix points);

  std::size_t size() const noexcept { return points_.rows(); }
  std::size_t dim() const noexcept { return points_.cols(); }
  const Matrix& points() const noexcept { return points_; }
  std::span<const double> point(std::size_t i) const { return points_.row(i); }
  std::span<const double> masses() const noexcept { return masses_; }
  double mass(std::size_t i) const { return masses_[i]; }
  double total_mass() const noexcept { return total_; }

 private:
  Matrix points_;
  std::vector<double> masses_;
  double total_ = 0.0;
};

enum class KernelKind { inner_product, squared_euclidean_cost };

/// n_s x n_t matrix derived from a source/target pair, tagged by what it holds.
class KernelMatrix {
 public:
  KernelMatrix(KernelKind kind, Matrix entries);

  KernelKind kind() const noexcept { return kind_; }
  const Matrix& entries() const noexcept { return entries_; }
  std::size_t rows() const noexcept { return entries_.rows(); }
  std::size_t cols() const noexcept { return entries_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

 private:
  KernelKind kind_;
  Matrix entries_;
};

/// Nonnegative n_s x n_t matrix of transported mass.
///
/// Only nonnegativity and finiteness are enforced here; marginal checks
/// depend on the solver (exact for Brenier and LP, within tolerance for
/// Sinkhorn) and go through `row_residual` / `col_residual`.
class TransportPlan {
 public:
  explicit TransportPlan(Matrix entries);

  const Matrix& entries() const noexcept { return entries_; }
  std::size_t rows() const noexcept { return entries_.rows(); }
  std::size_t cols() const noexcept { return entries_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  double total() const { return entries_.sum(); }

  /// max_i |sum_j T_ij - p_i|
  double row_residual(std::span<const double> source_masses) const;
  /// max_j |sum_i T_ij - q_j|
  double col_residual(std::span<const double> target_masses) const;
  std::size_t nonzeros() const;

 private:
  Matrix entries_;
};

DiscreteMeasure normalize(const DiscreteMeasure& m);

KernelMatrix inner_product_matrix(const DiscreteMeasure& src, const DiscreteMeasure& tgt);
KernelMatrix cost_matrix(const DiscreteMeasure& src, const DiscreteMeasure& tgt);

/// sum_ij T_ij C_ij. C must be a squared-Euclidean cost matrix.
double plan_cost(const TransportPlan& plan, const KernelMatrix& cost);

/// Throws ValidationError when total masses differ by more than kBalanceTolerance.
void require_balanced(std::span<const double> source_masses, std::span<const double> target_masses);
void require_same_dim(const DiscreteMeasure& src, const DiscreteMeasure& tgt);

double max_abs_diff(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace semiot
