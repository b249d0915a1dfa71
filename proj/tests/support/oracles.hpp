#pragma once

// Reference computations for tests. Each one is written directly from the
// defining formula and shares no code with the library routines it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "semiot/matrix.hpp"
#include "semiot/measures.hpp"
#include "semiot/random.hpp"

namespace oracle {

using semiot::Matrix;

inline Matrix random_points(semiot::Rng& rng, std::size_t n, std::size_t d, double lo = -1.0, double hi = 1.0) {
  Matrix m(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a) m(i, a) = rng.uniform(lo, hi);
  return m;
}

inline std::vector<double> random_masses(semiot::Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    x = rng.uniform(0.1, 1.0);
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

inline double dot(const Matrix& a, std::size_t i, const Matrix& b, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(j, k);
  return s;
}

/// M_ij by a plain triple loop.
inline Matrix inner_products(const Matrix& xs, const Matrix& xt) {
  Matrix m(xs.rows(), xt.rows());
  for (std::size_t i = 0; i < xs.rows(); ++i)
    for (std::size_t j = 0; j < xt.rows(); ++j) m(i, j) = dot(xs, i, xt, j);
  return m;
}

/// Per-row maximum of M_ij + h_j by enumeration.
inline std::vector<double> envelope(const Matrix& m, const std::vector<double>& h) {
  std::vector<double> out(m.rows(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] = std::max(out[i], m(i, j) + h[j]);
  return out;
}

/// Exact argmax set (no tolerance) per row.
inline std::vector<std::vector<std::size_t>> exact_ties(const Matrix& m, const std::vector<double>& h) {
  const auto top = envelope(m, h);
  std::vector<std::vector<std::size_t>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) + h[j] == top[i]) out[i].push_back(j);
  return out;
}

/// Smallest gap between the best and second-best plane over all sources.
inline double tie_margin(const Matrix& m, const std::vector<double>& h) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double best = -std::numeric_limits<double>::infinity(), second = best;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j) + h[j];
      if (v > best) {
        second = best;
        best = v;
      } else if (v > second) {
        second = v;
      }
    }
    margin = std::min(margin, best - second);
  }
  return margin;
}

/// Scatter-accumulate of split source masses into target cells.
inline std::vector<double> scatter_weights(const std::vector<std::vector<std::size_t>>& ties,
                                           const std::vector<double>& ps, std::size_t nt) {
  std::vector<double> w(nt, 0.0);
  for (std::size_t i = 0; i < ties.size(); ++i)
    for (std::size_t j : ties[i]) w[j] += ps[i] / static_cast<double>(ties[i].size());
  return w;
}

/// Literal double sum over cells j and sources i in W_j of p_i / |t_i| * u_i, minus sum_j q_j h_j.
inline double literal_energy(const Matrix& m, const std::vector<double>& h, const std::vector<double>& ps,
                             const std::vector<double>& pt) {
  const auto top = envelope(m, h);
  const auto ties = exact_ties(m, h);
  double e = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (std::find(ties[i].begin(), ties[i].end(), j) == ties[i].end()) continue;
      e += ps[i] / static_cast<double>(ties[i].size()) * top[i];
    }
  }
  for (std::size_t j = 0; j < h.size(); ++j) e -= pt[j] * h[j];
  return e;
}

/// sum_ij T_ij |x_i - c_j|^2 with T held fixed.
inline double fixed_cost(const Matrix& t, const Matrix& xs, const Matrix& centers) {
  double total = 0.0;
  for (std::size_t i = 0; i < xs.rows(); ++i)
    for (std::size_t j = 0; j < centers.rows(); ++j) {
      double d2 = 0.0;
      for (std::size_t a = 0; a < xs.cols(); ++a) d2 += (xs(i, a) - centers(j, a)) * (xs(i, a) - centers(j, a));
      total += t(i, j) * d2;
    }
  return total;
}

/// Minimum-cost integer flow with the given row/column totals, by uncapped
/// column-major enumeration (scaled by 1/granularity).
inline double integer_flow_min_cost(const Matrix& c, const std::vector<int>& rows, const std::vector<int>& cols,
                                    int granularity) {
  const std::size_t m = rows.size(), n = cols.size();
  std::vector<int> rl(rows), cl(cols);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> go = [&](std::size_t j, std::size_t i, double acc) {
    if (j == n) {
      best = std::min(best, acc);
      return;
    }
    if (i == m) {
      if (cl[j] == 0) go(j + 1, 0, acc);
      return;
    }
    const int hi = std::min(rl[i], cl[j]);
    for (int x = 0; x <= hi; ++x) {
      rl[i] -= x;
      cl[j] -= x;
      go(j, i + 1, acc + x * c(i, j));
      rl[i] += x;
      cl[j] += x;
    }
  };
  go(0, 0, 0.0);
  return best / granularity;
}

}  // namespace oracle
