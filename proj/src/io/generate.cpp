#include "semiot/io/generate.hpp"

#include <cmath>
#include <string>

#include "semiot/error.hpp"
#include "semiot/random.hpp"

namespace semiot::io {

MixtureSample generate_gaussian_mixture(const MixtureParams& p, std::uint64_t seed) {
  if (p.components == 0) throw ValidationError("components must be positive");
  if (p.count < p.components) throw ValidationError("need at least one point per component");
  if (p.dim == 0) throw ValidationError("dimension must be positive");
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw ValidationError("sigma must be positive");
  if (!(p.separation >= 0.0)) throw ValidationError("separation must be nonnegative");
  if (!(p.scale > 0.0) || !std::isfinite(p.scale)) throw ValidationError("scale must be positive");

  Rng rng(seed);
  const double min_dist2 = (p.separation * p.sigma) * (p.separation * p.sigma);
  Matrix means(p.components, p.dim);
  constexpr std::size_t kMaxAttempts = 100000;
  std::size_t attempts = 0;
  for (std::size_t c = 0; c < p.components;) {
    if (++attempts > kMaxAttempts) {
      throw ValidationError("cannot place " + std::to_string(p.components) + " means " +
                            std::to_string(p.separation) + " sigma apart in a box of side " + std::to_string(p.scale));
    }
    for (std::size_t a = 0; a < p.dim; ++a) means(c, a) = rng.uniform(0.0, p.scale);
    bool ok = true;
    for (std::size_t other = 0; other < c && ok; ++other) ok = squared_distance(means.row(c), means.row(other)) >= min_dist2;
    if (ok) ++c;
  }

  Matrix points(p.count, p.dim);
  std::vector<std::size_t> labels(p.count);
  for (std::size_t i = 0; i < p.count; ++i) {
    labels[i] = i % p.components;
    for (std::size_t a = 0; a < p.dim; ++a) points(i, a) = means(labels[i], a) + p.sigma * rng.normal();
  }
  return MixtureSample{DiscreteMeasure::uniform(std::move(points)), std::move(means), std::move(labels)};
}

DiscreteMeasure generate_uniform(std::size_t count, std::size_t dim, double scale, std::uint64_t seed) {
  if (count == 0) throw ValidationError("count must be positive");
  if (dim == 0) throw ValidationError("dimension must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("scale must be positive");
  Rng rng(seed);
  Matrix points(count, dim);
  for (double& x : points.data()) x = rng.uniform(0.0, scale);
  return DiscreteMeasure::uniform(std::move(points));
}

}  // namespace semiot::io
