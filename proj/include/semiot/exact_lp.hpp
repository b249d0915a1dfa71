#pragma once

#include <cstddef>
#include <span>

#include "semiot/measures.hpp"

namespace semiot {

enum class ExactMethod { network_simplex, brute_force };

struct ExactReport {
  TransportPlan plan;
  double cost = 0.0;
  ExactMethod method = ExactMethod::network_simplex;
  std::size_t pivots = 0;
};

/// Exact discrete OT by the transportation simplex (spanning-tree bases).
///
/// Starts from the north-west corner basis, prices with Dantzig's rule
/// (lowest index wins ties) and falls back to Bland's rule after a run of
/// degenerate pivots. Returned plans are basic: at most n_s + n_t - 1
/// nonzero entries.
ExactReport lp_solve(const KernelMatrix& cost, std::span<const double> source_masses,
                     std::span<const double> target_masses);

/// Exhaustive search over integer flows on the 1/granularity grid.
///
/// Masses must be integer multiples of 1/granularity, the integer total at
/// most 12 and n_s * n_t at most 12. Accepts any kernel kind.
ExactReport brute_force_solve(const KernelMatrix& cost, std::span<const double> source_masses,
                              std::span<const double> target_masses, std::size_t granularity);

}  // namespace semiot
