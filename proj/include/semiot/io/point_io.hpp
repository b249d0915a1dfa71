#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "semiot/measures.hpp"

namespace semiot::io {

enum class PointFormat { csv, json };

/// Shortest text that parses back to exactly `x`.
std::string format_double(double x);

/// `.json` selects JSON, anything else CSV.
PointFormat format_from_path(const std::filesystem::path& path);
PointFormat parse_format_name(std::string_view name);

/// CSV with header `x1,...,xd,mass`, one point per row.
DiscreteMeasure parse_points_csv(std::string_view text, const std::string& source = "<csv>");
/// JSON object `{"points": [[...], ...], "masses": [...]}`.
DiscreteMeasure parse_points_json(std::string_view text, const std::string& source = "<json>");

std::string format_points_csv(const DiscreteMeasure& m);
std::string format_points_json(const DiscreteMeasure& m);
std::string format_points(const DiscreteMeasure& m, PointFormat format);

DiscreteMeasure read_points(const std::filesystem::path& path);
void write_points(const std::filesystem::path& path, const DiscreteMeasure& m, PointFormat format);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace semiot::io
