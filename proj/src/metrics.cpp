#include "kfhe/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kfhe {

std::int64_t ConfusionMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted,
                          int class_count) {
  if (truth.size() != predicted.size())
    throw std::invalid_argument("confusion: label vector length mismatch");
  if (class_count < 1) throw std::invalid_argument("confusion: class_count must be >= 1");

  ConfusionMatrix cm;
  cm.class_count = class_count;
  cm.counts.assign(static_cast<std::size_t>(class_count) * class_count, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= class_count || predicted[i] < 0 || predicted[i] >= class_count)
      throw std::invalid_argument("confusion: label outside [0, class_count)");
    ++cm.at(truth[i], predicted[i]);
  }
  return cm;
}

double macro_f1(const ConfusionMatrix& cm) {
  if (cm.class_count < 1 || cm.counts.empty())
    throw std::invalid_argument("macro_f1: empty confusion matrix");

  double sum = 0.0;
  for (int cls = 0; cls < cm.class_count; ++cls) {
    std::int64_t row_total = 0;
    std::int64_t col_total = 0;
    for (int j = 0; j < cm.class_count; ++j) {
      row_total += cm.at(cls, j);
      col_total += cm.at(j, cls);
    }
    const std::int64_t hits = cm.at(cls, cls);
    const double precision = col_total > 0 ? static_cast<double>(hits) / col_total : 0.0;
    const double recall = row_total > 0 ? static_cast<double>(hits) / row_total : 0.0;
    if (precision + recall > 0.0) sum += 2.0 * precision * recall / (precision + recall);
  }
  return sum / static_cast<double>(cm.class_count);
}

double misclassification_rate(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size())
    throw std::invalid_argument("misclassification_rate: length mismatch");
  if (truth.empty()) throw std::invalid_argument("misclassification_rate: empty input");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] != predicted[i]) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

RankTable average_ranks(const std::vector<std::string>& algorithms,
                        const std::vector<std::string>& datasets,
                        const std::vector<std::vector<double>>& scores, bool higher_is_better) {
  const std::size_t m = algorithms.size();
  if (scores.size() != datasets.size())
    throw std::invalid_argument("average_ranks: one score row per dataset required");
  for (const auto& row : scores)
    if (row.size() != m) throw std::invalid_argument("average_ranks: incomplete score row");
  if (m == 0 || datasets.empty()) throw std::invalid_argument("average_ranks: empty table");

  RankTable table;
  table.algorithms = algorithms;
  table.datasets = datasets;
  table.scores = scores;
  table.ranks.assign(datasets.size(), std::vector<double>(m, 0.0));
  table.mean_ranks.assign(m, 0.0);

  for (std::size_t d = 0; d < datasets.size(); ++d) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[d][a] != scores[d][b])
        return higher_is_better ? scores[d][a] > scores[d][b] : scores[d][a] < scores[d][b];
      return a < b;
    });
    // Tied scores share the average of the positions they occupy.
    std::size_t i = 0;
    while (i < m) {
      std::size_t j = i;
      while (j + 1 < m && scores[d][order[j + 1]] == scores[d][order[i]]) ++j;
      const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
      for (std::size_t s = i; s <= j; ++s) table.ranks[d][order[s]] = shared;
      i = j + 1;
    }
    for (std::size_t a = 0; a < m; ++a) table.mean_ranks[a] += table.ranks[d][a];
  }
  for (double& mean : table.mean_ranks) mean /= static_cast<double>(datasets.size());
  return table;
}

}  // namespace kfhe
