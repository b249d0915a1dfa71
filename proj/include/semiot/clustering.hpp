#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "semiot/brenier.hpp"
#include "semiot/measures.hpp"

namespace semiot {

enum class CenterUpdate { gradient, barycenter };

struct ClusterConfig {
  std::size_t k = 5;
  std::size_t outer_steps = 10;
  /// Gradient-mode step. Unset: 0.5 / max_j sum_i T_ij, recomputed every step.
  std::optional<double> center_step_size;
  BrenierConfig inner;
  CenterUpdate center_update = CenterUpdate::gradient;
  std::uint64_t seed = 0;
};

/// One outer iteration: transport to the current centers, then move them.
struct ClusterStep {
  Matrix centers_before;
  Matrix centers_after;
  std::vector<std::size_t> assignments;
  /// Transport cost with the fresh plan and centers_before.
  double cost = 0.0;
  /// Same plan, evaluated at centers_after.
  double cost_after_update = 0.0;
  bool inner_converged = false;
  double inner_residual = 0.0;
  std::size_t inner_iterations = 0;
  /// Rows whose plan mass was split; assigned to the lowest tied index.
  std::size_t tied_rows = 0;
};

struct ClusterState {
  /// Final centers with uniform masses 1/k.
  DiscreteMeasure centers;
  /// Cluster index per source, from the last step's plan.
  std::vector<std::size_t> assignments;
  std::vector<double> cost_trace;
  Matrix initial_centers;
  std::vector<ClusterStep> steps;
  std::size_t unconverged_inner_solves = 0;
};

/// dW/dc_j = sum_i 2 T_ij (c_j - x_i), one row per center.
Matrix center_gradient(const TransportPlan& plan, const DiscreteMeasure& src, const DiscreteMeasure& centers);

/// sum_ij T_ij |x_i - c_j|^2 for arbitrary center positions.
double fixed_plan_cost(const TransportPlan& plan, const Matrix& src_points, const Matrix& centers);

/// Column-weighted means of the sources; a center with an empty column stays put.
Matrix plan_barycenters(const TransportPlan& plan, const Matrix& src_points, const Matrix& centers);

/// Row argmax, lowest index on ties.
std::vector<std::size_t> plan_assignments(const TransportPlan& plan, std::size_t* tied_rows = nullptr);

/// k distinct source indices drawn with the seeded generator.
std::vector<std::size_t> sample_center_indices(std::size_t n, std::size_t k, std::uint64_t seed);

/// Alternates semi-discrete transport to the centers (uniform masses 1/k)
/// with a center update. Non-converged inner solves are counted, not fatal.
ClusterState cluster(const DiscreteMeasure& src, const ClusterConfig& cfg);

}  // namespace semiot
