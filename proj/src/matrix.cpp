#include "semiot/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "semiot/error.hpp"

namespace semiot {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw ValidationError("matrix buffer holds " + std::to_string(data_.size()) +
                          " values, expected " + std::to_string(rows * cols));
  }
}

std::vector<double> Matrix::row_sums() const {
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto r = row(i);
    out[i] = std::accumulate(r.begin(), r.end(), 0.0);
  }
  return out;
}

std::vector<double> Matrix::col_sums() const {
  std::vector<double> out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto r = row(i);
    for (std::size_t j = 0; j < cols_; ++j) out[j] += r[j];
  }
  return out;
}

double Matrix::sum() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }

double Matrix::min_coeff() const {
  if (data_.empty()) throw ValidationError("min_coeff of empty matrix");
  return *std::min_element(data_.begin(), data_.end());
}

double Matrix::max_coeff() const {
  if (data_.empty()) throw ValidationError("max_coeff of empty matrix");
  return *std::max_element(data_.begin(), data_.end());
}

}  // namespace semiot
