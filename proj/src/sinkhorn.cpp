#include "semiot/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semiot/error.hpp"

namespace semiot {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate(const KernelMatrix& cost, std::span<const double> ps, std::span<const double> pt,
              const SinkhornConfig& cfg) {
  if (cost.kind() != KernelKind::squared_euclidean_cost) {
    throw ValidationError("sinkhorn needs a squared-Euclidean cost matrix");
  }
  if (cost.rows() != ps.size() || cost.cols() != pt.size()) {
    throw ValidationError("sinkhorn: marginal lengths do not match the cost matrix");
  }
  require_balanced(ps, pt);
  if (!(cfg.regularization > 0.0) || !std::isfinite(cfg.regularization)) {
    throw ValidationError("regularization must be positive");
  }
  if (cfg.max_iters == 0) throw ValidationError("max_iters must be positive");
  if (!(cfg.marginal_tolerance > 0.0)) throw ValidationError("marginal tolerance must be positive");
  if (!(cfg.underflow_floor > 0.0)) throw ValidationError("underflow floor must be positive");
}

Matrix scaled_plan(const Matrix& kernel, std::span<const double> u, std::span<const double> v) {
  Matrix t(kernel.rows(), kernel.cols());
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) = u[i] * kernel(i, j) * v[j];
  }
  return t;
}

SinkhornReport finish(Matrix t, const KernelMatrix& cost, std::span<const double> ps, std::span<const double> pt,
                      bool converged, std::size_t iterations, bool failed, std::vector<HalfStepResidual> trace) {
  TransportPlan plan(std::move(t));
  const double row_res = plan.row_residual(ps);
  const double col_res = plan.col_residual(pt);
  const double c = plan_cost(plan, cost);
  return SinkhornReport{std::move(plan), c, converged, iterations, failed, row_res, col_res, std::move(trace)};
}

SinkhornReport solve_naive(const KernelMatrix& cost, std::span<const double> ps, std::span<const double> pt,
                           const SinkhornConfig& cfg) {
  const std::size_t ns = ps.size();
  const std::size_t nt = pt.size();
  const Matrix& c = cost.entries();
  Matrix kernel(ns, nt);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nt; ++j) kernel(i, j) = std::exp(-c(i, j) / cfg.regularization);
  }

  std::vector<double> u(ns, 1.0), v(nt, 1.0), kv(ns), ktu(nt);
  std::vector<double> good_u = u, good_v = v;
  std::vector<HalfStepResidual> trace;
  bool converged = false;
  bool failed = false;
  std::size_t rounds = 0;

  auto bad = [&](double denom) { return !(denom >= cfg.underflow_floor) || !std::isfinite(denom); };
  auto compute_kv = [&] {
    for (std::size_t i = 0; i < ns; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < nt; ++j) acc += kernel(i, j) * v[j];
      kv[i] = acc;
    }
  };
  auto compute_ktu = [&] {
    std::fill(ktu.begin(), ktu.end(), 0.0);
    for (std::size_t i = 0; i < ns; ++i) {
      for (std::size_t j = 0; j < nt; ++j) ktu[j] += kernel(i, j) * u[i];
    }
  };
  auto row_res = [&] {
    double r = 0.0;
    for (std::size_t i = 0; i < ns; ++i) r = std::max(r, std::abs(u[i] * kv[i] - ps[i]));
    return r;
  };
  auto col_res = [&] {
    double r = 0.0;
    for (std::size_t j = 0; j < nt; ++j) r = std::max(r, std::abs(v[j] * ktu[j] - pt[j]));
    return r;
  };

  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    compute_kv();
    if (it > 1 && row_res() <= cfg.marginal_tolerance) {
      converged = true;
      break;
    }
    if (std::any_of(kv.begin(), kv.end(), bad)) {
      failed = true;
      break;
    }
    for (std::size_t i = 0; i < ns; ++i) u[i] = ps[i] / kv[i];
    compute_ktu();
    if (cfg.record_trace) trace.push_back({it, ScalingUpdate::u, row_res(), col_res()});
    if (std::any_of(ktu.begin(), ktu.end(), bad)) {
      failed = true;
      break;
    }
    good_u = u;
    for (std::size_t j = 0; j < nt; ++j) v[j] = pt[j] / ktu[j];
    good_v = v;
    rounds = it;
    if (cfg.record_trace) {
      compute_kv();
      trace.push_back({it, ScalingUpdate::v, row_res(), col_res()});
    }
  }
  if (!converged && !failed) {
    compute_kv();
    converged = row_res() <= cfg.marginal_tolerance;
  }
  return finish(scaled_plan(kernel, good_u, good_v), cost, ps, pt, converged, rounds, failed, std::move(trace));
}

double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

// Dual potentials f, g with T_ij = exp((f_i + g_j - C_ij) / reg).
SinkhornReport solve_log_domain(const KernelMatrix& cost, std::span<const double> ps, std::span<const double> pt,
                                const SinkhornConfig& cfg) {
  const std::size_t ns = ps.size();
  const std::size_t nt = pt.size();
  const double reg = cfg.regularization;
  const Matrix& c = cost.entries();

  std::vector<double> f(ns, 0.0), g(nt, 0.0), row_lse(ns), col_lse(nt), buf(std::max(ns, nt));
  std::vector<HalfStepResidual> trace;

  auto log_mass = [](double p) { return p > 0.0 ? std::log(p) : kNegInf; };
  auto compute_row_lse = [&] {
    for (std::size_t i = 0; i < ns; ++i) {
      for (std::size_t j = 0; j < nt; ++j) buf[j] = (g[j] - c(i, j)) / reg;
      row_lse[i] = log_sum_exp(std::span<const double>(buf.data(), nt));
    }
  };
  auto compute_col_lse = [&] {
    for (std::size_t j = 0; j < nt; ++j) {
      for (std::size_t i = 0; i < ns; ++i) buf[i] = (f[i] - c(i, j)) / reg;
      col_lse[j] = log_sum_exp(std::span<const double>(buf.data(), ns));
    }
  };
  auto row_res = [&] {
    double r = 0.0;
    for (std::size_t i = 0; i < ns; ++i) r = std::max(r, std::abs(std::exp(f[i] / reg + row_lse[i]) - ps[i]));
    return r;
  };
  auto col_res = [&] {
    double r = 0.0;
    for (std::size_t j = 0; j < nt; ++j) r = std::max(r, std::abs(std::exp(g[j] / reg + col_lse[j]) - pt[j]));
    return r;
  };

  bool converged = false;
  std::size_t rounds = 0;
  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    compute_row_lse();
    if (it > 1 && row_res() <= cfg.marginal_tolerance) {
      converged = true;
      break;
    }
    for (std::size_t i = 0; i < ns; ++i) f[i] = reg * (log_mass(ps[i]) - row_lse[i]);
    compute_col_lse();
    if (cfg.record_trace) trace.push_back({it, ScalingUpdate::u, row_res(), col_res()});
    for (std::size_t j = 0; j < nt; ++j) g[j] = reg * (log_mass(pt[j]) - col_lse[j]);
    rounds = it;
    if (cfg.record_trace) {
      compute_row_lse();
      trace.push_back({it, ScalingUpdate::v, row_res(), col_res()});
    }
  }
  if (!converged) {
    compute_row_lse();
    converged = row_res() <= cfg.marginal_tolerance;
  }

  Matrix t(ns, nt);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nt; ++j) t(i, j) = std::exp((f[i] + g[j] - c(i, j)) / reg);
  }
  return finish(std::move(t), cost, ps, pt, converged, rounds, false, std::move(trace));
}

}  // namespace

SinkhornReport sinkhorn_solve(const KernelMatrix& cost, std::span<const double> source_masses,
                              std::span<const double> target_masses, const SinkhornConfig& cfg) {
  validate(cost, source_masses, target_masses, cfg);
  return cfg.stabilized ? solve_log_domain(cost, source_masses, target_masses, cfg)
                        : solve_naive(cost, source_masses, target_masses, cfg);
}

}  // namespace semiot
