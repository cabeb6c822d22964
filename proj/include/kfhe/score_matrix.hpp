#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kfhe {

// n x c matrix of per-class scores, one row per datapoint. Rows are
// probability-like: entries >= 0 summing to 1 (within 1e-9).
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& at(std::size_t row, std::size_t col) { return data_[row * cols_ + col]; }
  double at(std::size_t row, std::size_t col) const { return data_[row * cols_ + col]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool same_shape(const ScoreMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  // Argmax of a row, ties resolved to the lowest class index.
  int row_class(std::size_t r) const {
    const auto values = row(r);
    int best = 0;
    for (std::size_t j = 1; j < values.size(); ++j)
      if (values[j] > values[best]) best = static_cast<int>(j);
    return best;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Per-row argmax labels (lowest index wins ties).
std::vector<int> classify(const ScoreMatrix& scores);

}  // namespace kfhe
