#pragma once
// Seeded instances shared by the unit and acceptance tests.
#include <cstdint>
#include <utility>

#include "semiot/io/generate.hpp"

namespace fixture {

using semiot::DiscreteMeasure;

/// Two Gaussian blobs of `per_blob` points each; the targets are the two blob means.
inline std::pair<DiscreteMeasure, DiscreteMeasure> two_blobs(std::uint64_t seed, std::size_t per_blob = 5) {
  semiot::io::MixtureParams p;
  p.components = 2;
  p.count = 2 * per_blob;
  auto sample = semiot::io::generate_gaussian_mixture(p, seed);
  return {std::move(sample.measure), DiscreteMeasure::uniform(sample.means)};
}

/// 150 two-blob sources at scale 30 and two targets drawn from an independent
/// mixture at scale 60, so that squared distances reach the low thousands.
inline std::pair<DiscreteMeasure, DiscreteMeasure> far_targets(std::uint64_t seed, std::size_t count = 150) {
  semiot::io::MixtureParams p;
  p.components = 2;
  p.count = count;
  auto src = semiot::io::generate_gaussian_mixture(p, seed).measure;
  semiot::io::MixtureParams t;
  t.components = 2;
  t.count = 2;
  t.scale = 60.0;
  auto tgt = semiot::io::generate_gaussian_mixture(t, seed + 1000).measure;
  return {std::move(src), std::move(tgt)};
}

}  // namespace fixture
