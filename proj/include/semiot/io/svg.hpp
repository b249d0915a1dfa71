#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "semiot/matrix.hpp"

namespace semiot::io {

/// 2D scatter of clustered points with one marker per center.
///
/// Points are drawn as `<circle class="src">`, centers as
/// `<polygon class="center">`, colored by cluster from a fixed 10-color
/// palette. The 600x600 canvas is fitted to the data bounding box with a
/// 5% margin, keeping the aspect ratio.
std::string render_cluster_svg(const Matrix& points, std::span<const std::size_t> assignments, const Matrix& centers,
                               std::string_view title);

}  // namespace semiot::io
