#pragma once

// Approximate Brenier solver for semi-discrete optimal transport.
//
// Each target y_j owns a hyperplane x -> <x, y_j> + h_j. The upper envelope
// of these planes is evaluated at the source samples only; the planes that
// attain the maximum at a source (its tie set) share that source's mass
// equally. Gradient descent on the intercepts h drives the resulting cell
// masses toward the target masses.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "semiot/measures.hpp"

namespace semiot {

/// Hyperplane intercepts, one per target. Entries are always finite.
class HeightVector {
 public:
  explicit HeightVector(std::vector<double> values);
  static HeightVector zeros(std::size_t n) { return HeightVector(std::vector<double>(n, 0.0)); }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  /// Returns h + c * 1.
  HeightVector shifted(double c) const;

 private:
  std::vector<double> values_;
};

/// Envelope value and tie set for every source sample.
///
/// Tie sets are stored back to back (CSR layout); `ties(i)` lists target
/// indices in increasing order and is never empty.
class EnvelopeAssignment {
 public:
  std::size_t sources() const noexcept { return values_.size(); }
  std::size_t targets() const noexcept { return targets_; }
  std::span<const double> values() const noexcept { return values_; }
  double value(std::size_t i) const { return values_[i]; }
  std::span<const std::size_t> ties(std::size_t i) const {
    return {indices_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t tie_count(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
  /// Number of sources whose tie set has more than one target.
  std::size_t shared_sources() const;

 private:
  friend void evaluate_envelope_into(const KernelMatrix&, std::span<const double>, double,
                                     EnvelopeAssignment&);

  std::size_t targets_ = 0;
  std::vector<double> values_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> indices_;
};

enum class StepSchedule { fixed, diminishing };

struct BrenierConfig {
  /// Gradient step. Unset: 0.1 * (max M - min M) / n_t.
  std::optional<double> step_size;
  std::size_t max_steps = 10000;
  /// Threshold on max_j |w_j - p^t_j|. Unset: 1e-3 * max_j p^t_j.
  std::optional<double> tolerance;
  /// Relative band for tie detection; must be below the tolerance.
  double tie_tolerance = 1e-9;
  /// `diminishing` uses step / sqrt(k + 1) at update k.
  StepSchedule schedule = StepSchedule::fixed;
};

/// Snapshot handed to the per-iteration observer. Valid only during the callback.
struct IterationView {
  std::size_t iteration;
  std::span<const double> heights;
  const EnvelopeAssignment& assignment;
  std::span<const double> weights;
  std::span<const double> gradient;
  double energy;
};

using IterationObserver = std::function<void(const IterationView&)>;

struct SolveReport {
  TransportPlan plan;
  HeightVector heights;
  bool converged = false;
  /// Gradient updates performed.
  std::size_t iterations = 0;
  /// Iteration whose plan and heights are returned.
  std::size_t best_iteration = 0;
  /// Best max_j |w_j - p^t_j| seen.
  double residual = 0.0;
  /// sum_ij T_ij |x_i - y_j|^2 of the returned plan.
  double cost = 0.0;
  std::vector<double> energy_trace;
  /// Targets that received no mass in the returned iterate.
  std::size_t empty_cells = 0;
  double step_size = 0.0;
  double tolerance = 0.0;
};

/// values[i] = max_j (M_ij + h_j); ties(i) = { j : M_ij + h_j >= values[i] - tau (1 + |values[i]|) }.
EnvelopeAssignment evaluate_envelope(const KernelMatrix& inner, const HeightVector& heights, double tie_tolerance);

/// Buffer-reusing form of evaluate_envelope used by the solver loop.
void evaluate_envelope_into(const KernelMatrix& inner, std::span<const double> heights, double tie_tolerance,
                            EnvelopeAssignment& out);

/// w_j = sum over sources i with j in ties(i) of p_i / |ties(i)|.
std::vector<double> cell_weights(const EnvelopeAssignment& assignment, std::span<const double> source_masses);

/// sum_i p_i u(x_i) - sum_j q_j h_j
double energy(const EnvelopeAssignment& assignment, std::span<const double> source_masses,
              std::span<const double> target_masses, const HeightVector& heights);

/// g_j = w_j - q_j
std::vector<double> gradient(std::span<const double> weights, std::span<const double> target_masses);

/// T_ij = p_i / |ties(i)| for j in ties(i), zero elsewhere.
TransportPlan extract_plan(const EnvelopeAssignment& assignment, std::span<const double> source_masses);

double default_step_size(const KernelMatrix& inner);

/// Gradient descent on the intercepts starting from h = 0.
///
/// Stops when max_j |g_j| <= tolerance or after max_steps updates, and
/// returns the iterate with the smallest residual seen. `observer`, when
/// set, is called once for h = 0 and once after every update.
SolveReport solve(const DiscreteMeasure& src, const DiscreteMeasure& tgt, const BrenierConfig& cfg = {},
                  const IterationObserver& observer = {});

}  // namespace semiot
