#include "semiot/io/point_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "semiot/error.hpp"

namespace semiot::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string column_name(std::size_t col, std::size_t dim) {
  return col == dim ? "mass" : "x" + std::to_string(col + 1);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

PointFormat format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".json" ? PointFormat::json : PointFormat::csv;
}

PointFormat parse_format_name(std::string_view name) {
  if (name == "csv") return PointFormat::csv;
  if (name == "json") return PointFormat::json;
  throw ValidationError("unknown format '" + std::string(name) + "'");
}

DiscreteMeasure parse_points_csv(std::string_view text, const std::string& source) {
  std::size_t line_no = 0;
  std::size_t dim = 0;
  bool have_header = false;
  std::vector<double> coords;
  std::vector<double> masses;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);

    if (!have_header) {
      if (fields.size() < 2) throw ParseError(source, line_no, "header", "expected x1,...,xd,mass");
      dim = fields.size() - 1;
      for (std::size_t c = 0; c < fields.size(); ++c) {
        const std::string want = column_name(c, dim);
        if (fields[c] != want) {
          throw ParseError(source, line_no, want, "header column is '" + std::string(fields[c]) + "'");
        }
      }
      have_header = true;
      continue;
    }

    if (fields.size() != dim + 1) {
      throw ParseError(source, line_no, fields.size() < dim + 1 ? column_name(fields.size(), dim) : "mass",
                       "expected " + std::to_string(dim + 1) + " fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string_view f = fields[c];
      double value = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), value);
      if (f.empty() || res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
        throw ParseError(source, line_no, column_name(c, dim), "not a number: '" + std::string(f) + "'");
      }
      if (c == dim) {
        if (!(value >= 0.0) || !std::isfinite(value)) throw ParseError(source, line_no, "mass", "must be finite and >= 0");
        masses.push_back(value);
      } else {
        if (!std::isfinite(value)) throw ParseError(source, line_no, column_name(c, dim), "must be finite");
        coords.push_back(value);
      }
    }
  }
  if (!have_header) throw ParseError(source, line_no == 0 ? 1 : line_no, "header", "file is empty");
  if (masses.empty()) throw ParseError(source, line_no, "x1", "no data rows");
  const std::size_t n = masses.size();
  return DiscreteMeasure(Matrix(n, dim, std::move(coords)), std::move(masses));
}

DiscreteMeasure parse_points_json(std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(source, line, "document", e.what());
  }
  if (!doc.is_object()) throw ParseError(source, 1, "document", "expected a JSON object");
  if (!doc.contains("points") || !doc["points"].is_array()) throw ParseError(source, 1, "points", "missing array");
  if (!doc.contains("masses") || !doc["masses"].is_array()) throw ParseError(source, 1, "masses", "missing array");
  const auto& pts = doc["points"];
  const auto& ms = doc["masses"];
  if (pts.size() != ms.size()) {
    throw ParseError(source, 1, "masses", "length " + std::to_string(ms.size()) + " differs from points length " +
                                              std::to_string(pts.size()));
  }
  if (pts.empty()) throw ParseError(source, 1, "points", "no points");
  const std::size_t dim = pts[0].is_array() ? pts[0].size() : 0;
  if (dim == 0) throw ParseError(source, 1, "points[0]", "expected a non-empty array of numbers");
  std::vector<double> coords;
  coords.reserve(pts.size() * dim);
  std::vector<double> masses;
  masses.reserve(ms.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string field = "points[" + std::to_string(i) + "]";
    if (!pts[i].is_array() || pts[i].size() != dim) {
      throw ParseError(source, 1, field, "expected " + std::to_string(dim) + " coordinates");
    }
    for (const auto& v : pts[i]) {
      if (!v.is_number()) throw ParseError(source, 1, field, "non-numeric coordinate");
      coords.push_back(v.get<double>());
    }
    if (!ms[i].is_number()) throw ParseError(source, 1, "masses[" + std::to_string(i) + "]", "not a number");
    masses.push_back(ms[i].get<double>());
  }
  const std::size_t n = masses.size();
  return DiscreteMeasure(Matrix(n, dim, std::move(coords)), std::move(masses));
}

std::string format_points_csv(const DiscreteMeasure& m) {
  std::string out;
  for (std::size_t c = 0; c < m.dim(); ++c) out += "x" + std::to_string(c + 1) + ",";
  out += "mass\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (double v : m.point(i)) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(m.mass(i));
    out += '\n';
  }
  return out;
}

std::string format_points_json(const DiscreteMeasure& m) {
  nlohmann::json doc;
  doc["points"] = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto p = m.point(i);
    doc["points"].push_back(std::vector<double>(p.begin(), p.end()));
  }
  doc["masses"] = std::vector<double>(m.masses().begin(), m.masses().end());
  return doc.dump(2) + "\n";
}

std::string format_points(const DiscreteMeasure& m, PointFormat format) {
  return format == PointFormat::json ? format_points_json(m) : format_points_csv(m);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ValidationError("write failed for " + path.string());
}

DiscreteMeasure read_points(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  return format_from_path(path) == PointFormat::json ? parse_points_json(text, path.string())
                                                     : parse_points_csv(text, path.string());
}

void write_points(const std::filesystem::path& path, const DiscreteMeasure& m, PointFormat format) {
  write_text(path, format_points(m, format));
}

}  // namespace semiot::io
