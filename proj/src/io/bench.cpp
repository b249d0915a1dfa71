#include "semiot/io/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "semiot/error.hpp"
#include "semiot/exact_lp.hpp"
#include "semiot/io/point_io.hpp"

namespace semiot::io {

namespace {

struct Outcome {
  double cost;
  bool converged;
  Matrix plan;
};

BenchRow timed(const std::string& method, std::size_t reps, const std::function<Outcome()>& run) {
  BenchRow row{method, std::numeric_limits<double>::quiet_NaN(), 0.0, false, std::nullopt, {}};
  try {
    double total = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto start = std::chrono::steady_clock::now();
      Outcome out = run();
      total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      row.cost = out.cost;
      row.converged = out.converged;
      row.plan = std::move(out.plan);
    }
    row.seconds = total / static_cast<double>(reps);
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const DiscreteMeasure& src, const DiscreteMeasure& tgt, const BenchOptions& options) {
  if (options.repetitions == 0) throw ValidationError("repetitions must be positive");
  require_same_dim(src, tgt);
  require_balanced(src.masses(), tgt.masses());

  std::vector<BenchRow> rows;
  rows.push_back(timed("brenier", options.repetitions, [&] {
    SolveReport r = solve(src, tgt, options.brenier);
    return Outcome{r.cost, r.converged, r.plan.entries()};
  }));
  rows.push_back(timed("sinkhorn", options.repetitions, [&] {
    const KernelMatrix c = cost_matrix(src, tgt);
    SinkhornReport r = sinkhorn_solve(c, src.masses(), tgt.masses(), options.sinkhorn);
    return Outcome{r.cost, r.converged && !r.failed_zero_denominator, r.plan.entries()};
  }));
  rows.push_back(timed("lp", options.repetitions, [&] {
    const KernelMatrix c = cost_matrix(src, tgt);
    ExactReport r = lp_solve(c, src.masses(), tgt.masses());
    return Outcome{r.cost, true, r.plan.entries()};
  }));
  return rows;
}

std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "method,cost,seconds,converged\n";
  for (const auto& r : rows) {
    out += r.method + "," + (std::isnan(r.cost) ? std::string("nan") : format_double(r.cost)) + "," +
           format_double(r.seconds) + "," + (r.converged ? "true" : "false") + "\n";
  }
  return out;
}

std::string format_bench_plans(const std::vector<BenchRow>& rows) {
  std::string out;
  char buf[64];
  for (const auto& r : rows) {
    out += "T_" + r.method;
    if (!r.error.empty()) {
      out += ": error: " + r.error + "\n";
      continue;
    }
    std::snprintf(buf, sizeof(buf), "  (W = %.6g)\n", r.cost);
    out += buf;
    if (!r.plan) continue;
    for (std::size_t i = 0; i < r.plan->rows(); ++i) {
      out += "  [";
      for (std::size_t j = 0; j < r.plan->cols(); ++j) {
        std::snprintf(buf, sizeof(buf), "%s%.8g", j == 0 ? "" : "  ", (*r.plan)(i, j));
        out += buf;
      }
      out += "]\n";
    }
  }
  return out;
}

}  // namespace semiot::io
