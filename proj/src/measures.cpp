#include "semiot/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "semiot/error.hpp"

namespace semiot {

namespace {

bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(Matrix points, std::vector<double> masses)
    : points_(std::move(points)), masses_(std::move(masses)) {
  if (points_.rows() == 0) throw ValidationError("measure has no points");
  if (points_.cols() == 0) throw ValidationError("measure points have dimension 0");
  if (masses_.size() != points_.rows()) {
    throw ValidationError("measure has " + std::to_string(points_.rows()) + " points but " +
                          std::to_string(masses_.size()) + " masses");
  }
  if (!all_finite(points_.data())) throw ValidationError("measure has non-finite coordinates");
  bool any_positive = false;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    const double p = masses_[i];
    if (!std::isfinite(p) || p < 0.0) {
      throw ValidationError("mass " + std::to_string(i) + " is negative or non-finite");
    }
    any_positive = any_positive || p > 0.0;
  }
  if (!any_positive) throw ValidationError("measure has zero total mass");
  total_ = std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

DiscreteMeasure DiscreteMeasure::uniform(Matrix points) {
  const std::size_t n = points.rows();
  if (n == 0) throw ValidationError("measure has no points");
  return DiscreteMeasure(std::move(points), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

KernelMatrix::KernelMatrix(KernelKind kind, Matrix entries) : kind_(kind), entries_(std::move(entries)) {
  if (!all_finite(entries_.data())) throw ValidationError("kernel matrix has non-finite entries");
  if (kind_ == KernelKind::squared_euclidean_cost) {
    for (double c : entries_.data()) {
      if (c < 0.0) throw ValidationError("cost matrix has a negative entry");
    }
  }
}

TransportPlan::TransportPlan(Matrix entries) : entries_(std::move(entries)) {
  for (double t : entries_.data()) {
    if (!std::isfinite(t) || t < 0.0) throw ValidationError("transport plan entry is negative or non-finite");
  }
}

double TransportPlan::row_residual(std::span<const double> source_masses) const {
  if (source_masses.size() != rows()) throw ValidationError("row marginal length mismatch");
  return max_abs_diff(entries_.row_sums(), source_masses);
}

double TransportPlan::col_residual(std::span<const double> target_masses) const {
  if (target_masses.size() != cols()) throw ValidationError("column marginal length mismatch");
  return max_abs_diff(entries_.col_sums(), target_masses);
}

std::size_t TransportPlan::nonzeros() const {
  auto d = entries_.data();
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](double t) { return t != 0.0; }));
}

DiscreteMeasure normalize(const DiscreteMeasure& m) {
  const double total = m.total_mass();
  if (!(total > 0.0)) throw ValidationError("cannot normalize a measure with zero total mass");
  std::vector<double> masses(m.masses().begin(), m.masses().end());
  for (double& p : masses) p /= total;
  return DiscreteMeasure(m.points(), std::move(masses));
}

void require_same_dim(const DiscreteMeasure& src, const DiscreteMeasure& tgt) {
  if (src.dim() != tgt.dim()) {
    throw ValidationError("dimension mismatch: source d=" + std::to_string(src.dim()) +
                          ", target d=" + std::to_string(tgt.dim()));
  }
}

KernelMatrix inner_product_matrix(const DiscreteMeasure& src, const DiscreteMeasure& tgt) {
  require_same_dim(src, tgt);
  const std::size_t ns = src.size();
  const std::size_t nt = tgt.size();
  const std::size_t d = src.dim();
  Matrix m(ns, nt);
  for (std::size_t i = 0; i < ns; ++i) {
    auto xs = src.point(i);
    for (std::size_t j = 0; j < nt; ++j) {
      auto xt = tgt.point(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += xs[k] * xt[k];
      m(i, j) = acc;
    }
  }
  return KernelMatrix(KernelKind::inner_product, std::move(m));
}

KernelMatrix cost_matrix(const DiscreteMeasure& src, const DiscreteMeasure& tgt) {
  require_same_dim(src, tgt);
  Matrix c(src.size(), tgt.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = 0; j < tgt.size(); ++j) c(i, j) = squared_distance(src.point(i), tgt.point(j));
  }
  return KernelMatrix(KernelKind::squared_euclidean_cost, std::move(c));
}

double plan_cost(const TransportPlan& plan, const KernelMatrix& cost) {
  if (cost.kind() != KernelKind::squared_euclidean_cost) {
    throw ValidationError("plan_cost requires a squared-Euclidean cost matrix");
  }
  if (plan.rows() != cost.rows() || plan.cols() != cost.cols()) {
    throw ValidationError("plan is " + std::to_string(plan.rows()) + "x" + std::to_string(plan.cols()) +
                          " but cost is " + std::to_string(cost.rows()) + "x" + std::to_string(cost.cols()));
  }
  auto t = plan.entries().data();
  auto c = cost.entries().data();
  double total = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) total += t[k] * c[k];
  return total;
}

void require_balanced(std::span<const double> source_masses, std::span<const double> target_masses) {
  const double ps = std::accumulate(source_masses.begin(), source_masses.end(), 0.0);
  const double pt = std::accumulate(target_masses.begin(), target_masses.end(), 0.0);
  if (std::abs(ps - pt) > kBalanceTolerance) {
    throw ValidationError("unequal total mass: source " + std::to_string(ps) + ", target " + std::to_string(pt));
  }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("length mismatch in max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace semiot
