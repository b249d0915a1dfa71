#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "semiot/measures.hpp"

namespace semiot::io {

struct MixtureParams {
  std::size_t components = 2;
  std::size_t count = 100;
  std::size_t dim = 2;
  /// Per-coordinate standard deviation of every component.
  double sigma = 1.0;
  /// Minimum distance between component means, in units of sigma.
  double separation = 8.0;
  /// Means are drawn uniformly from [0, scale]^dim.
  double scale = 30.0;
};

struct MixtureSample {
  DiscreteMeasure measure;
  Matrix means;
  /// Component of each point; point i belongs to component i % components.
  std::vector<std::size_t> labels;
};

/// Isotropic Gaussian mixture with equal component sizes (up to one point)
/// and uniform masses. Deterministic for a given seed.
MixtureSample generate_gaussian_mixture(const MixtureParams& params, std::uint64_t seed);

/// `count` points uniform in [0, scale]^dim with masses 1/count.
DiscreteMeasure generate_uniform(std::size_t count, std::size_t dim, double scale, std::uint64_t seed);

}  // namespace semiot::io
