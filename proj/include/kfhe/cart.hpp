#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kfhe/dataset.hpp"
#include "kfhe/score_matrix.hpp"

namespace kfhe {

// rpart-like defaults; the stopping rules bound the tree instead of pruning.
struct TreeParams {
  int max_depth = 30;
  std::size_t min_split = 20;  // smallest node we try to split
  std::size_t min_leaf = 7;    // smallest child a split may create
  double min_impurity_decrease = 0.01;

  void validate() const;
};

struct TreeNode {
  bool leaf = true;
  std::vector<double> scores;  // leaf: class proportions, length c

  int feature = -1;
  // Numeric rule: value < threshold goes left.
  double threshold = 0.0;
  // Categorical rule: codes seen at fit time, partitioned into the two
  // children. Codes unseen at this node follow default_left.
  std::vector<int> left_codes;
  std::vector<int> right_codes;
  bool default_left = false;
  int left = -1;
  int right = -1;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int class_count = 0;
  std::vector<FeatureType> schema;

  std::size_t node_count() const { return nodes.size(); }
  int depth() const;
};

struct SplitRule {
  int feature = -1;
  double threshold = 0.0;        // numeric
  std::vector<int> left_codes;   // categorical
  double decrease = 0.0;         // node-local weighted Gini decrease
};

// 1 - sum((count_j / total)^2). Throws on an empty count vector or zero total.
double gini(std::span<const std::int64_t> class_counts);

// Best split over all numeric thresholds (midpoints of adjacent distinct
// values) and categorical prefix subsets in class-0-proportion order.
// nullopt when no split clears min_impurity_decrease and min_leaf. Ties break
// to the lowest feature index, then the candidate generated first.
std::optional<SplitRule> best_split(const Dataset& data, std::span<const std::size_t> rows,
                                    const TreeParams& params);

// Greedy recursive partitioning minimizing Gini impurity. Deterministic;
// always returns at least a single leaf with the global class proportions.
TreeModel fit_tree(const Dataset& data, const TreeParams& params = {});

// Row i = scores of the leaf reached by datapoint i. Unseen categorical
// values route toward the child with the larger training mass.
ScoreMatrix predict_scores(const TreeModel& tree, const Dataset& data);

}  // namespace kfhe
