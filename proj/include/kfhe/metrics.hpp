#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kfhe {

// c x c counts; rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  int class_count = 0;
  std::vector<std::int64_t> counts;

  std::int64_t& at(int true_class, int predicted_class) {
    return counts[static_cast<std::size_t>(true_class) * class_count + predicted_class];
  }
  std::int64_t at(int true_class, int predicted_class) const {
    return counts[static_cast<std::size_t>(true_class) * class_count + predicted_class];
  }
  std::int64_t total() const;
};

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted,
                          int class_count);

// Unweighted mean of per-class F1 over all declared classes. A class whose
// precision and recall are both unavailable or zero contributes 0.
double macro_f1(const ConfusionMatrix& cm);

double misclassification_rate(std::span<const int> truth, std::span<const int> predicted);

// Scores per (dataset, algorithm) with per-dataset ranks (1 = best); tied
// scores share the average of their positions.
struct RankTable {
  std::vector<std::string> algorithms;
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> scores;  // [dataset][algorithm]
  std::vector<std::vector<double>> ranks;   // [dataset][algorithm]
  std::vector<double> mean_ranks;           // [algorithm]
};

RankTable average_ranks(const std::vector<std::string>& algorithms,
                        const std::vector<std::string>& datasets,
                        const std::vector<std::vector<double>>& scores, bool higher_is_better);

}  // namespace kfhe
