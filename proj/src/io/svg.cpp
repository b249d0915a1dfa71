#include "semiot/io/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>

#include "semiot/error.hpp"

namespace semiot::io {

namespace {

constexpr double kCanvas = 600.0;
constexpr double kMargin = 0.05;
constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_cluster_svg(const Matrix& points, std::span<const std::size_t> assignments, const Matrix& centers,
                               std::string_view title) {
  if (points.cols() != 2 || centers.cols() != 2) throw ValidationError("SVG output needs 2-dimensional points");
  if (assignments.size() != points.rows()) throw ValidationError("one assignment per point required");
  for (std::size_t a : assignments) {
    if (a >= centers.rows()) throw ValidationError("assignment index out of range");
  }

  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  auto grow = [&](const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      xmin = std::min(xmin, m(i, 0));
      xmax = std::max(xmax, m(i, 0));
      ymin = std::min(ymin, m(i, 1));
      ymax = std::max(ymax, m(i, 1));
    }
  };
  grow(points);
  grow(centers);
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double inner = kCanvas * (1.0 - 2.0 * kMargin);
  const double scale = inner / span;
  const double x0 = kCanvas * kMargin + 0.5 * (inner - (xmax - xmin) * scale);
  const double y0 = kCanvas * kMargin + 0.5 * (inner - (ymax - ymin) * scale);
  auto sx = [&](double x) { return x0 + (x - xmin) * scale; };
  // SVG y grows downward.
  auto sy = [&](double y) { return kCanvas - (y0 + (y - ymin) * scale); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  out += "  <title>" + escape(title) + "</title>\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
  out += "  <text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" + escape(title) + "</text>\n";
  out += "  <g id=\"sources\">\n";
  for (std::size_t i = 0; i < points.rows(); ++i) {
    out += "    <circle class=\"src\" cx=\"" + fixed(sx(points(i, 0))) + "\" cy=\"" + fixed(sy(points(i, 1))) +
           "\" r=\"3\" fill=\"" + kPalette[assignments[i] % kPalette.size()] + "\" fill-opacity=\"0.7\"/>\n";
  }
  out += "  </g>\n  <g id=\"centers\">\n";
  for (std::size_t j = 0; j < centers.rows(); ++j) {
    const double cx = sx(centers(j, 0));
    const double cy = sy(centers(j, 1));
    // Upward triangle, outlined so it stands out from same-colored points.
    out += "    <polygon class=\"center\" points=\"" + fixed(cx) + "," + fixed(cy - 9) + " " + fixed(cx - 8) + "," +
           fixed(cy + 6) + " " + fixed(cx + 8) + "," + fixed(cy + 6) + "\" fill=\"" + kPalette[j % kPalette.size()] +
           "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  out += "  </g>\n</svg>\n";
  return out;
}

}  // namespace semiot::io
