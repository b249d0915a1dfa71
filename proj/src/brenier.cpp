#include "semiot/brenier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "semiot/error.hpp"

namespace semiot {

HeightVector::HeightVector(std::vector<double> values) : values_(std::move(values)) {
  for (double h : values_) {
    if (!std::isfinite(h)) throw ValidationError("height vector has a non-finite entry");
  }
}

HeightVector HeightVector::shifted(double c) const {
  std::vector<double> out(values_);
  for (double& h : out) h += c;
  return HeightVector(std::move(out));
}

std::size_t EnvelopeAssignment::shared_sources() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < sources(); ++i) count += tie_count(i) > 1 ? 1 : 0;
  return count;
}

void evaluate_envelope_into(const KernelMatrix& inner, std::span<const double> heights, double tie_tolerance,
                            EnvelopeAssignment& out) {
  if (inner.kind() != KernelKind::inner_product) {
    throw ValidationError("envelope evaluation needs an inner-product matrix");
  }
  const std::size_t ns = inner.rows();
  const std::size_t nt = inner.cols();
  if (heights.size() != nt) {
    throw ValidationError("height vector has " + std::to_string(heights.size()) + " entries for " +
                          std::to_string(nt) + " targets");
  }
  if (nt == 0) throw ValidationError("envelope over zero targets");

  out.targets_ = nt;
  out.values_.resize(ns);
  out.offsets_.resize(ns + 1);
  out.indices_.clear();
  out.offsets_[0] = 0;

  const Matrix& m = inner.entries();
  for (std::size_t i = 0; i < ns; ++i) {
    auto row = m.row(i);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nt; ++j) best = std::max(best, row[j] + heights[j]);
    const double floor = best - tie_tolerance * (1.0 + std::abs(best));
    for (std::size_t j = 0; j < nt; ++j) {
      if (row[j] + heights[j] >= floor) out.indices_.push_back(j);
    }
    out.values_[i] = best;
    out.offsets_[i + 1] = out.indices_.size();
  }
}

EnvelopeAssignment evaluate_envelope(const KernelMatrix& inner, const HeightVector& heights, double tie_tolerance) {
  EnvelopeAssignment out;
  evaluate_envelope_into(inner, heights.values(), tie_tolerance, out);
  return out;
}

std::vector<double> cell_weights(const EnvelopeAssignment& assignment, std::span<const double> source_masses) {
  if (source_masses.size() != assignment.sources()) throw ValidationError("cell_weights: source mass length mismatch");
  std::vector<double> w(assignment.targets(), 0.0);
  for (std::size_t i = 0; i < assignment.sources(); ++i) {
    auto ties = assignment.ties(i);
    if (ties.empty()) throw Error("internal: empty tie set for source " + std::to_string(i));
    const double share = source_masses[i] / static_cast<double>(ties.size());
    for (std::size_t j : ties) w[j] += share;
  }
  return w;
}

double energy(const EnvelopeAssignment& assignment, std::span<const double> source_masses,
              std::span<const double> target_masses, const HeightVector& heights) {
  if (source_masses.size() != assignment.sources() || target_masses.size() != assignment.targets() ||
      heights.size() != assignment.targets()) {
    throw ValidationError("energy: inconsistent sizes");
  }
  // Every tied plane attains the same envelope value, so the split mass
  // recombines into p_i.
  double e = 0.0;
  for (std::size_t i = 0; i < assignment.sources(); ++i) e += source_masses[i] * assignment.value(i);
  for (std::size_t j = 0; j < heights.size(); ++j) e -= target_masses[j] * heights[j];
  return e;
}

std::vector<double> gradient(std::span<const double> weights, std::span<const double> target_masses) {
  if (weights.size() != target_masses.size()) throw ValidationError("gradient: length mismatch");
  std::vector<double> g(weights.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = weights[j] - target_masses[j];
  return g;
}

TransportPlan extract_plan(const EnvelopeAssignment& assignment, std::span<const double> source_masses) {
  if (source_masses.size() != assignment.sources()) throw ValidationError("extract_plan: source mass length mismatch");
  Matrix t(assignment.sources(), assignment.targets());
  for (std::size_t i = 0; i < assignment.sources(); ++i) {
    auto ties = assignment.ties(i);
    const double share = source_masses[i] / static_cast<double>(ties.size());
    for (std::size_t j : ties) t(i, j) = share;
  }
  return TransportPlan(std::move(t));
}

double default_step_size(const KernelMatrix& inner) {
  const double range = inner.entries().max_coeff() - inner.entries().min_coeff();
  // Degenerate geometry (all inner products equal): any positive step works.
  if (!(range > 0.0)) return 0.1;
  return 0.1 * range / static_cast<double>(inner.cols());
}

namespace {

double max_abs(std::span<const double> xs) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(x));
  return worst;
}

}  // namespace

SolveReport solve(const DiscreteMeasure& src, const DiscreteMeasure& tgt, const BrenierConfig& cfg,
                  const IterationObserver& observer) {
  require_same_dim(src, tgt);
  require_balanced(src.masses(), tgt.masses());
  const auto ps = src.masses();
  const auto pt = tgt.masses();
  const std::size_t nt = tgt.size();

  const KernelMatrix inner = inner_product_matrix(src, tgt);
  const double step = cfg.step_size.value_or(default_step_size(inner));
  const double tol = cfg.tolerance.value_or(1e-3 * *std::max_element(pt.begin(), pt.end()));
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("step size must be positive");
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (cfg.max_steps == 0) throw ValidationError("max_steps must be positive");
  if (!(cfg.tie_tolerance > 0.0)) throw ValidationError("tie tolerance must be positive");
  if (!(cfg.tie_tolerance < tol)) throw ValidationError("tie tolerance must be below the convergence tolerance");

  std::vector<double> h(nt, 0.0);
  EnvelopeAssignment assign;
  std::vector<double> w;
  std::vector<double> g;
  std::vector<double> energies;

  auto evaluate = [&](std::size_t k) {
    evaluate_envelope_into(inner, h, cfg.tie_tolerance, assign);
    for (double u : assign.values()) {
      if (!std::isfinite(u)) throw NumericalError("non-finite envelope value", k);
    }
    w = cell_weights(assign, ps);
    g = gradient(w, pt);
    double e = 0.0;
    for (std::size_t i = 0; i < assign.sources(); ++i) e += ps[i] * assign.value(i);
    for (std::size_t j = 0; j < nt; ++j) e -= pt[j] * h[j];
    if (!std::isfinite(e)) throw NumericalError("non-finite energy", k);
    energies.push_back(e);
    if (observer) observer(IterationView{k, h, assign, w, g, e});
    return max_abs(g);
  };

  double residual = evaluate(0);
  double best_residual = residual;
  std::size_t best_iteration = 0;
  std::vector<double> best_h = h;
  EnvelopeAssignment best_assign = assign;
  std::size_t best_empty = static_cast<std::size_t>(std::count(w.begin(), w.end(), 0.0));

  std::size_t k = 0;
  while (best_residual > tol && k < cfg.max_steps) {
    const double step_k =
        cfg.schedule == StepSchedule::fixed ? step : step / std::sqrt(static_cast<double>(k) + 1.0);
    for (std::size_t j = 0; j < nt; ++j) h[j] -= step_k * g[j];
    ++k;
    for (double hj : h) {
      if (!std::isfinite(hj)) throw NumericalError("non-finite height", k);
    }
    residual = evaluate(k);
    if (residual < best_residual) {
      best_residual = residual;
      best_iteration = k;
      best_h = h;
      best_assign = assign;
      best_empty = static_cast<std::size_t>(std::count(w.begin(), w.end(), 0.0));
    }
  }

  TransportPlan plan = extract_plan(best_assign, ps);
  const double cost = plan_cost(plan, cost_matrix(src, tgt));
  return SolveReport{std::move(plan),
                     HeightVector(std::move(best_h)),
                     best_residual <= tol,
                     k,
                     best_iteration,
                     best_residual,
                     cost,
                     std::move(energies),
                     best_empty,
                     step,
                     tol};
}

}  // namespace semiot
