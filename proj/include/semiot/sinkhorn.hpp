#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "semiot/measures.hpp"

namespace semiot {

struct SinkhornConfig {
  /// Entropic regularization: kernel K = exp(-C / regularization).
  double regularization = 0.05;
  std::size_t max_iters = 10000;
  double marginal_tolerance = 1e-8;
  /// A scaling denominator below this value aborts the naive path.
  double underflow_floor = 1e-300;
  /// Log-domain updates; never reports a zero denominator.
  bool stabilized = false;
  /// Record marginal residuals after every half-update.
  bool record_trace = false;
};

enum class ScalingUpdate { u, v };

/// Marginal residuals of diag(u) K diag(v) right after one half-update.
struct HalfStepResidual {
  std::size_t iteration;
  ScalingUpdate updated;
  double row_residual;
  double col_residual;
};

struct SinkhornReport {
  TransportPlan plan;
  double cost = 0.0;
  bool converged = false;
  /// Completed u/v rounds.
  std::size_t iterations = 0;
  bool failed_zero_denominator = false;
  double row_residual = 0.0;
  double col_residual = 0.0;
  std::vector<HalfStepResidual> trace;
};

/// Sinkhorn-Knopp matrix scaling starting from v = 1.
///
/// Each round sets u = p ./ (K v), which restores the row marginals, then
/// v = q ./ (K^T u), which restores the column marginals. Convergence is
/// tested on the row residual, the condition the last update left free.
/// On the naive path a denominator below `underflow_floor` (or non-finite)
/// stops the run with `failed_zero_denominator` set and returns the last
/// finite scaling pair.
SinkhornReport sinkhorn_solve(const KernelMatrix& cost, std::span<const double> source_masses,
                              std::span<const double> target_masses, const SinkhornConfig& cfg = {});

}  // namespace semiot
