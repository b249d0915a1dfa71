#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "semiot/measures.hpp"

namespace semiot::io {

/// Solver outcome as written by `solve`.
struct ResultRecord {
  std::string method;
  double cost = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double residual = 0.0;
  Matrix plan;
  double elapsed_seconds = 0.0;
  nlohmann::json config = nlohmann::json::object();
  std::optional<bool> failed_zero_denominator;
};

nlohmann::json result_to_json(const ResultRecord& r);
ResultRecord result_from_json(const nlohmann::json& doc);

/// Dense plan as an array of row arrays.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& rows);

}  // namespace semiot::io
