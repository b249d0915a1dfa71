#include "semiot/exact_lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "semiot/error.hpp"

namespace semiot {

namespace {

double weighted_sum(const Matrix& t, const Matrix& c) {
  double total = 0.0;
  auto td = t.data();
  auto cd = c.data();
  for (std::size_t k = 0; k < td.size(); ++k) total += td[k] * cd[k];
  return total;
}

void check_shapes(const KernelMatrix& cost, std::span<const double> ps, std::span<const double> pt) {
  if (cost.rows() != ps.size() || cost.cols() != pt.size()) {
    throw ValidationError("marginal lengths do not match the cost matrix");
  }
  if (ps.empty() || pt.empty()) throw ValidationError("empty marginal");
  for (double p : ps) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("negative or non-finite source mass");
  }
  for (double q : pt) {
    if (!(q >= 0.0) || !std::isfinite(q)) throw ValidationError("negative or non-finite target mass");
  }
  require_balanced(ps, pt);
}

class TransportationSimplex {
 public:
  TransportationSimplex(const Matrix& cost, std::span<const double> ps, std::span<const double> pt)
      : c_(cost), m_(cost.rows()), n_(cost.cols()), flow_(m_, n_), basic_(m_ * n_, 0) {
    const double cmax = std::max(std::abs(cost.min_coeff()), std::abs(cost.max_coeff()));
    eps_ = 1e-11 * (1.0 + cmax);
    north_west_corner(ps, pt);
  }

  std::size_t run() {
    std::size_t pivots = 0;
    std::size_t degenerate_streak = 0;
    bool bland = false;
    const std::size_t cap = 100 * (m_ + n_) * (m_ * n_) + 1000;
    std::vector<double> u(m_), v(n_);
    while (true) {
      compute_potentials(u, v);
      const std::size_t entering = price(u, v, bland);
      if (entering == kNone) break;
      const double theta = pivot(entering);
      ++pivots;
      degenerate_streak = theta == 0.0 ? degenerate_streak + 1 : 0;
      if (degenerate_streak > m_ + n_) bland = true;
      if (pivots > cap) throw NumericalError("transportation simplex exceeded its pivot cap", pivots);
    }
    return pivots;
  }

  Matrix take_flow() { return std::move(flow_); }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void north_west_corner(std::span<const double> ps, std::span<const double> pt) {
    std::vector<double> supply(ps.begin(), ps.end());
    std::vector<double> demand(pt.begin(), pt.end());
    const double total_s = std::accumulate(supply.begin(), supply.end(), 0.0);
    const double total_d = std::accumulate(demand.begin(), demand.end(), 0.0);
    if (total_d > 0.0) {
      for (double& d : demand) d *= total_s / total_d;
    }
    std::size_t i = 0, j = 0;
    // Staircase walk: exactly m + n - 1 basic cells, zero-flow cells kept
    // basic so the basis stays a spanning tree.
    while (true) {
      const double x = std::min(supply[i], demand[j]);
      flow_(i, j) = x;
      basic_[i * n_ + j] = 1;
      supply[i] -= x;
      demand[j] -= x;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (i == m_ - 1) {
        ++j;
      } else if (j == n_ - 1) {
        ++i;
      } else if (supply[i] == 0.0) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Adjacency of the basis tree: nodes 0..m-1 are rows, m..m+n-1 columns.
  void build_tree() {
    adj_.assign(m_ + n_, {});
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (basic_[i * n_ + j]) {
          adj_[i].push_back(m_ + j);
          adj_[m_ + j].push_back(i);
        }
      }
    }
  }

  void compute_potentials(std::vector<double>& u, std::vector<double>& v) {
    build_tree();
    std::vector<char> seen(m_ + n_, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    u[0] = 0.0;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t next : adj_[node]) {
        if (seen[next]) continue;
        seen[next] = 1;
        if (node < m_) {
          v[next - m_] = c_(node, next - m_) - u[node];
        } else {
          u[next] = c_(next, node - m_) - v[node - m_];
        }
        stack.push_back(next);
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw Error("internal: transportation basis is not a spanning tree");
    }
  }

  std::size_t price(const std::vector<double>& u, const std::vector<double>& v, bool bland) const {
    double best = -eps_;
    std::size_t entering = kNone;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (basic_[i * n_ + j]) continue;
        const double reduced = c_(i, j) - u[i] - v[j];
        if (reduced < best) {
          if (bland) return i * n_ + j;
          best = reduced;
          entering = i * n_ + j;
        }
      }
    }
    return entering;
  }

  // Pushes flow around the cycle closed by `entering`; returns the amount moved.
  double pivot(std::size_t entering) {
    const std::size_t ei = entering / n_;
    const std::size_t ej = entering % n_;
    // Tree path from row ei to column ej.
    std::vector<std::size_t> parent(m_ + n_, kNone);
    std::vector<std::size_t> queue{ei};
    parent[ei] = ei;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t node = queue[head];
      if (node == m_ + ej) break;
      for (std::size_t next : adj_[node]) {
        if (parent[next] != kNone) continue;
        parent[next] = node;
        queue.push_back(next);
      }
    }
    if (parent[m_ + ej] == kNone) throw Error("internal: no basis path for entering cell");

    // Walk back from column ej; path edges nearest ej come first.
    std::vector<std::size_t> path;
    for (std::size_t node = m_ + ej; node != ei; node = parent[node]) {
      const std::size_t prev = parent[node];
      const std::size_t row = node < m_ ? node : prev;
      const std::size_t col = node < m_ ? prev - m_ : node - m_;
      path.push_back(row * n_ + col);
    }
    std::reverse(path.begin(), path.end());

    // The first, third, ... edges out of row ei lose flow.
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = kNone;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const std::size_t cell = path[k];
      const double x = flow_.data()[cell];
      if (x < theta || (x == theta && cell < leaving)) {
        theta = x;
        leaving = cell;
      }
    }
    auto f = flow_.data();
    f[entering] += theta;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k % 2 == 0) {
        f[path[k]] -= theta;
      } else {
        f[path[k]] += theta;
      }
    }
    f[leaving] = 0.0;
    basic_[leaving] = 0;
    basic_[entering] = 1;
    return theta;
  }

  const Matrix& c_;
  std::size_t m_;
  std::size_t n_;
  Matrix flow_;
  std::vector<char> basic_;
  std::vector<std::vector<std::size_t>> adj_;
  double eps_ = 0.0;
};

std::vector<std::int64_t> to_grid(std::span<const double> masses, std::size_t granularity, const char* side) {
  std::vector<std::int64_t> out;
  out.reserve(masses.size());
  const double g = static_cast<double>(granularity);
  for (double p : masses) {
    const double scaled = p * g;
    const double rounded = std::round(scaled);
    if (!(p >= 0.0) || std::abs(scaled - rounded) > 1e-9 * std::max(1.0, g)) {
      throw ValidationError(std::string(side) + " mass " + std::to_string(p) + " is not a multiple of 1/" +
                            std::to_string(granularity));
    }
    out.push_back(static_cast<std::int64_t>(rounded));
  }
  return out;
}

}  // namespace

ExactReport lp_solve(const KernelMatrix& cost, std::span<const double> source_masses,
                     std::span<const double> target_masses) {
  if (cost.kind() != KernelKind::squared_euclidean_cost) {
    throw ValidationError("lp_solve needs a squared-Euclidean cost matrix");
  }
  check_shapes(cost, source_masses, target_masses);
  TransportationSimplex simplex(cost.entries(), source_masses, target_masses);
  const std::size_t pivots = simplex.run();
  Matrix flow = simplex.take_flow();
  const double total = weighted_sum(flow, cost.entries());
  return ExactReport{TransportPlan(std::move(flow)), total, ExactMethod::network_simplex, pivots};
}

ExactReport brute_force_solve(const KernelMatrix& cost, std::span<const double> source_masses,
                              std::span<const double> target_masses, std::size_t granularity) {
  if (granularity == 0) throw ValidationError("granularity must be positive");
  if (cost.rows() != source_masses.size() || cost.cols() != target_masses.size()) {
    throw ValidationError("marginal lengths do not match the cost matrix");
  }
  const std::size_t m = cost.rows();
  const std::size_t n = cost.cols();
  if (m * n > 12) throw SizeError("brute force limited to 12 cells, got " + std::to_string(m * n));
  const auto rows = to_grid(source_masses, granularity, "source");
  const auto cols = to_grid(target_masses, granularity, "target");
  const std::int64_t total = std::accumulate(rows.begin(), rows.end(), std::int64_t{0});
  if (total != std::accumulate(cols.begin(), cols.end(), std::int64_t{0})) {
    throw ValidationError("integer source and target totals differ");
  }
  if (total > 12) throw SizeError("brute force limited to integer mass 12, got " + std::to_string(total));

  const Matrix& c = cost.entries();
  std::vector<std::int64_t> row_left(rows), col_left(cols), current(m * n, 0), best;
  double best_cost = std::numeric_limits<double>::infinity();

  // Row-major fill; the last column of each row takes what the row has left.
  auto recurse = [&](auto&& self, std::size_t cell, double acc) -> void {
    if (cell == m * n) {
      if (acc < best_cost) {
        best_cost = acc;
        best = current;
      }
      return;
    }
    const std::size_t i = cell / n;
    const std::size_t j = cell % n;
    const std::int64_t lo = j == n - 1 ? row_left[i] : 0;
    const std::int64_t hi = std::min(row_left[i], col_left[j]);
    if (lo > hi) return;
    for (std::int64_t x = lo; x <= hi; ++x) {
      current[cell] = x;
      row_left[i] -= x;
      col_left[j] -= x;
      self(self, cell + 1, acc + static_cast<double>(x) * c(i, j));
      row_left[i] += x;
      col_left[j] += x;
    }
    current[cell] = 0;
  };
  recurse(recurse, 0, 0.0);
  if (best.empty()) throw ValidationError("no feasible integer flow");

  Matrix plan(m, n);
  for (std::size_t k = 0; k < best.size(); ++k) {
    plan.data()[k] = static_cast<double>(best[k]) / static_cast<double>(granularity);
  }
  const double total_cost = weighted_sum(plan, c);
  return ExactReport{TransportPlan(std::move(plan)), total_cost, ExactMethod::brute_force, 0};
}

}  // namespace semiot
