#include "semiot/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "semiot/error.hpp"
#include "semiot/random.hpp"

namespace semiot {

namespace {

void check_plan_shape(const TransportPlan& plan, std::size_t ns, std::size_t k) {
  if (plan.rows() != ns || plan.cols() != k) {
    throw ValidationError("plan shape " + std::to_string(plan.rows()) + "x" + std::to_string(plan.cols()) +
                          " does not match " + std::to_string(ns) + " sources and " + std::to_string(k) +
                          " centers");
  }
}

}  // namespace

Matrix center_gradient(const TransportPlan& plan, const DiscreteMeasure& src, const DiscreteMeasure& centers) {
  require_same_dim(src, centers);
  check_plan_shape(plan, src.size(), centers.size());
  const std::size_t d = src.dim();
  Matrix grad(centers.size(), d);
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto x = src.point(i);
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const double t = plan(i, j);
      if (t == 0.0) continue;
      auto c = centers.point(j);
      for (std::size_t a = 0; a < d; ++a) grad(j, a) += 2.0 * t * (c[a] - x[a]);
    }
  }
  return grad;
}

double fixed_plan_cost(const TransportPlan& plan, const Matrix& src_points, const Matrix& centers) {
  check_plan_shape(plan, src_points.rows(), centers.rows());
  if (src_points.cols() != centers.cols()) throw ValidationError("fixed_plan_cost: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < src_points.rows(); ++i) {
    for (std::size_t j = 0; j < centers.rows(); ++j) {
      const double t = plan(i, j);
      if (t != 0.0) total += t * squared_distance(src_points.row(i), centers.row(j));
    }
  }
  return total;
}

Matrix plan_barycenters(const TransportPlan& plan, const Matrix& src_points, const Matrix& centers) {
  check_plan_shape(plan, src_points.rows(), centers.rows());
  const std::size_t d = src_points.cols();
  Matrix sums(centers.rows(), d);
  std::vector<double> mass(centers.rows(), 0.0);
  for (std::size_t i = 0; i < src_points.rows(); ++i) {
    auto x = src_points.row(i);
    for (std::size_t j = 0; j < centers.rows(); ++j) {
      const double t = plan(i, j);
      if (t == 0.0) continue;
      mass[j] += t;
      for (std::size_t a = 0; a < d; ++a) sums(j, a) += t * x[a];
    }
  }
  Matrix out = centers;
  for (std::size_t j = 0; j < centers.rows(); ++j) {
    if (mass[j] <= 0.0) continue;
    for (std::size_t a = 0; a < d; ++a) out(j, a) = sums(j, a) / mass[j];
  }
  return out;
}

std::vector<std::size_t> plan_assignments(const TransportPlan& plan, std::size_t* tied_rows) {
  std::vector<std::size_t> out(plan.rows(), 0);
  std::size_t ties = 0;
  for (std::size_t i = 0; i < plan.rows(); ++i) {
    auto row = plan.entries().row(i);
    const auto best = std::max_element(row.begin(), row.end());
    out[i] = static_cast<std::size_t>(best - row.begin());
    if (std::count(row.begin(), row.end(), *best) > 1) ++ties;
  }
  if (tied_rows != nullptr) *tied_rows = ties;
  return out;
}

std::vector<std::size_t> sample_center_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k > n) throw ValidationError("cannot pick " + std::to_string(k) + " centers from " + std::to_string(n) + " points");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t a = 0; a < k; ++a) std::swap(idx[a], idx[a + rng.index(n - a)]);
  idx.resize(k);
  return idx;
}

ClusterState cluster(const DiscreteMeasure& src, const ClusterConfig& cfg) {
  if (cfg.k == 0) throw ValidationError("k must be positive");
  if (cfg.k > src.size()) {
    throw ValidationError("k = " + std::to_string(cfg.k) + " exceeds the " + std::to_string(src.size()) + " sources");
  }
  if (cfg.outer_steps == 0) throw ValidationError("outer_steps must be positive");
  if (std::abs(src.total_mass() - 1.0) > kBalanceTolerance) throw ValidationError("source measure is not normalized");
  if (cfg.center_step_size && !(*cfg.center_step_size > 0.0)) {
    throw ValidationError("center step size must be positive");
  }

  const std::size_t k = cfg.k;
  const std::size_t d = src.dim();
  const Matrix& x = src.points();
  const std::vector<double> center_mass(k, 1.0 / static_cast<double>(k));

  Matrix centers(k, d);
  const auto picks = sample_center_indices(src.size(), k, cfg.seed);
  for (std::size_t j = 0; j < k; ++j) std::copy_n(x.row(picks[j]).begin(), d, centers.row(j).begin());

  ClusterState state{DiscreteMeasure(centers, center_mass), {}, {}, centers, {}, 0};
  for (std::size_t step = 0; step < cfg.outer_steps; ++step) {
    const DiscreteMeasure current(centers, center_mass);
    SolveReport inner = solve(src, current, cfg.inner);

    ClusterStep record;
    record.centers_before = centers;
    record.cost = inner.cost;
    record.inner_converged = inner.converged;
    record.inner_residual = inner.residual;
    record.inner_iterations = inner.iterations;
    record.assignments = plan_assignments(inner.plan, &record.tied_rows);
    if (!inner.converged) ++state.unconverged_inner_solves;

    if (cfg.center_update == CenterUpdate::barycenter) {
      centers = plan_barycenters(inner.plan, x, centers);
    } else {
      const auto col_mass = inner.plan.entries().col_sums();
      const double heaviest = *std::max_element(col_mass.begin(), col_mass.end());
      const double eta = cfg.center_step_size.value_or(0.5 / heaviest);
      const Matrix grad = center_gradient(inner.plan, src, current);
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t a = 0; a < d; ++a) centers(j, a) -= eta * grad(j, a);
      }
    }
    record.centers_after = centers;
    record.cost_after_update = fixed_plan_cost(inner.plan, x, centers);

    state.cost_trace.push_back(record.cost);
    state.assignments = record.assignments;
    state.steps.push_back(std::move(record));
  }
  state.centers = DiscreteMeasure(centers, center_mass);
  return state;
}

}  // namespace semiot
