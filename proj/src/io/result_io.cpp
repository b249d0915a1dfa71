#include "semiot/io/result_io.hpp"

#include <vector>

#include "semiot/error.hpp"

namespace semiot::io {

nlohmann::json matrix_to_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& rows) {
  if (!rows.is_array()) throw ValidationError("plan must be an array of rows");
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows[0].size();
  std::vector<double> data;
  data.reserve(n * m);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != m) throw ValidationError("plan rows have unequal length");
    for (const auto& v : row) {
      if (!v.is_number()) throw ValidationError("plan entry is not a number");
      data.push_back(v.get<double>());
    }
  }
  return Matrix(n, m, std::move(data));
}

nlohmann::json result_to_json(const ResultRecord& r) {
  nlohmann::json doc;
  doc["method"] = r.method;
  doc["cost"] = r.cost;
  doc["converged"] = r.converged;
  doc["iterations"] = r.iterations;
  doc["residual"] = r.residual;
  doc["plan"] = matrix_to_json(r.plan);
  doc["elapsed_seconds"] = r.elapsed_seconds;
  doc["config"] = r.config;
  if (r.failed_zero_denominator) doc["failed_zero_denominator"] = *r.failed_zero_denominator;
  return doc;
}

ResultRecord result_from_json(const nlohmann::json& doc) {
  for (const char* key : {"method", "cost", "converged", "iterations", "residual", "plan", "elapsed_seconds", "config"}) {
    if (!doc.contains(key)) throw ValidationError(std::string("result file lacks '") + key + "'");
  }
  ResultRecord r;
  r.method = doc["method"].get<std::string>();
  r.cost = doc["cost"].get<double>();
  r.converged = doc["converged"].get<bool>();
  r.iterations = doc["iterations"].get<std::size_t>();
  r.residual = doc["residual"].get<double>();
  r.plan = matrix_from_json(doc["plan"]);
  r.elapsed_seconds = doc["elapsed_seconds"].get<double>();
  r.config = doc["config"];
  if (doc.contains("failed_zero_denominator")) r.failed_zero_denominator = doc["failed_zero_denominator"].get<bool>();
  return r;
}

}  // namespace semiot::io
