#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semiot/brenier.hpp"
#include "semiot/measures.hpp"
#include "semiot/sinkhorn.hpp"

namespace semiot::io {

struct BenchOptions {
  std::size_t repetitions = 1;
  BrenierConfig brenier;
  SinkhornConfig sinkhorn;
};

struct BenchRow {
  std::string method;
  /// NaN when the solver threw.
  double cost = 0.0;
  /// Mean wall time per repetition, solver call only.
  double seconds = 0.0;
  bool converged = false;
  std::optional<Matrix> plan;
  std::string error;
};

/// Runs brenier, sinkhorn and lp, in that order, on the same inputs.
/// A solver that throws yields a row with `error` set; the others still run.
std::vector<BenchRow> run_bench(const DiscreteMeasure& src, const DiscreteMeasure& tgt, const BenchOptions& options);

/// `method,cost,seconds,converged` plus one line per row.
std::string format_bench_csv(const std::vector<BenchRow>& rows);

/// Human-readable plans, one block per method.
std::string format_bench_plans(const std::vector<BenchRow>& rows);

}  // namespace semiot::io
