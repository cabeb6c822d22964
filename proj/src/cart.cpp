#include "kfhe/cart.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kfhe {

void TreeParams::validate() const {
  if (max_depth < 1) throw std::invalid_argument("tree params: max_depth must be >= 1");
  if (min_leaf < 1) throw std::invalid_argument("tree params: min_leaf must be >= 1");
  if (min_split < 2 * min_leaf)
    throw std::invalid_argument("tree params: min_split must be >= 2 * min_leaf");
}

int TreeModel::depth() const {
  if (nodes.empty()) return 0;
  // Children always appear after their parent, so one forward pass suffices.
  std::vector<int> level(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const TreeNode& node = nodes[i];
    if (node.leaf) continue;
    level[node.left] = level[i] + 1;
    level[node.right] = level[i] + 1;
    deepest = std::max(deepest, level[i] + 1);
  }
  return deepest;
}

double gini(std::span<const std::int64_t> class_counts) {
  if (class_counts.empty()) throw std::invalid_argument("gini: empty count vector");
  double total = 0.0;
  for (std::int64_t count : class_counts) total += static_cast<double>(count);
  if (total <= 0.0) throw std::invalid_argument("gini: zero total count");
  double sum_squares = 0.0;
  for (std::int64_t count : class_counts) {
    const double p = static_cast<double>(count) / total;
    sum_squares += p * p;
  }
  return 1.0 - sum_squares;
}

namespace {

double gini_from(const std::vector<std::int64_t>& counts, double total) {
  double sum_squares = 0.0;
  for (std::int64_t count : counts) {
    const double p = static_cast<double>(count) / total;
    sum_squares += p * p;
  }
  return 1.0 - sum_squares;
}

}  // namespace

std::optional<SplitRule> best_split(const Dataset& data, std::span<const std::size_t> rows,
                                    const TreeParams& params) {
  const std::size_t n = rows.size();
  const int class_count = data.class_count;
  const double total = static_cast<double>(n);

  std::vector<std::int64_t> node_counts(class_count, 0);
  for (std::size_t r : rows) ++node_counts[data.labels[r]];
  const double node_gini = gini_from(node_counts, total);

  std::optional<SplitRule> best;

  for (std::size_t feature = 0; feature < data.features.size(); ++feature) {
    const FeatureColumn& col = data.features[feature];

    if (col.type == FeatureType::numeric) {
      std::vector<std::pair<double, int>> ordered(n);
      for (std::size_t i = 0; i < n; ++i) ordered[i] = {col.values[rows[i]], data.labels[rows[i]]};
      std::sort(ordered.begin(), ordered.end());
      if (ordered.front().first == ordered.back().first) continue;

      std::vector<std::int64_t> left_counts(class_count, 0);
      std::vector<std::int64_t> right_counts = node_counts;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        ++left_counts[ordered[i].second];
        --right_counts[ordered[i].second];
        if (ordered[i].first == ordered[i + 1].first) continue;
        const std::size_t left_n = i + 1;
        const std::size_t right_n = n - left_n;
        if (left_n < params.min_leaf || right_n < params.min_leaf) continue;
        const double decrease =
            node_gini -
            (static_cast<double>(left_n) / total) * gini_from(left_counts, static_cast<double>(left_n)) -
            (static_cast<double>(right_n) / total) * gini_from(right_counts, static_cast<double>(right_n));
        if (!best || decrease > best->decrease) {
          SplitRule rule;
          rule.feature = static_cast<int>(feature);
          rule.threshold = (ordered[i].first + ordered[i + 1].first) / 2.0;
          rule.decrease = decrease;
          best = std::move(rule);
        }
      }
    } else {
      // Per-code class counts over the codes present at this node.
      std::vector<int> codes;
      std::vector<std::vector<std::int64_t>> code_counts;
      std::vector<int> code_slot(col.categories.size(), -1);
      for (std::size_t r : rows) {
        const int code = static_cast<int>(col.values[r]);
        if (code_slot[code] < 0) {
          code_slot[code] = static_cast<int>(codes.size());
          codes.push_back(code);
          code_counts.emplace_back(class_count, 0);
        }
        ++code_counts[code_slot[code]][data.labels[r]];
      }
      if (codes.size() < 2) continue;

      // Order codes by class-0 proportion (ties by code) and scan prefixes.
      std::vector<std::size_t> order(codes.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto size_of = [&](std::size_t s) {
          return std::accumulate(code_counts[s].begin(), code_counts[s].end(), std::int64_t{0});
        };
        const double pa = static_cast<double>(code_counts[a][0]) / static_cast<double>(size_of(a));
        const double pb = static_cast<double>(code_counts[b][0]) / static_cast<double>(size_of(b));
        if (pa != pb) return pa < pb;
        return codes[a] < codes[b];
      });

      std::vector<std::int64_t> left_counts(class_count, 0);
      std::vector<std::int64_t> right_counts = node_counts;
      std::int64_t left_n = 0;
      for (std::size_t m = 0; m + 1 < order.size(); ++m) {
        for (int cls = 0; cls < class_count; ++cls) {
          left_counts[cls] += code_counts[order[m]][cls];
          right_counts[cls] -= code_counts[order[m]][cls];
        }
        left_n = std::accumulate(left_counts.begin(), left_counts.end(), std::int64_t{0});
        const std::int64_t right_n = static_cast<std::int64_t>(n) - left_n;
        if (left_n < static_cast<std::int64_t>(params.min_leaf) ||
            right_n < static_cast<std::int64_t>(params.min_leaf))
          continue;
        const double decrease =
            node_gini -
            (static_cast<double>(left_n) / total) * gini_from(left_counts, static_cast<double>(left_n)) -
            (static_cast<double>(right_n) / total) * gini_from(right_counts, static_cast<double>(right_n));
        if (!best || decrease > best->decrease) {
          SplitRule rule;
          rule.feature = static_cast<int>(feature);
          rule.left_codes.reserve(m + 1);
          for (std::size_t s = 0; s <= m; ++s) rule.left_codes.push_back(codes[order[s]]);
          std::sort(rule.left_codes.begin(), rule.left_codes.end());
          rule.decrease = decrease;
          best = std::move(rule);
        }
      }
    }
  }

  if (!best || best->decrease <= 0.0 || best->decrease < params.min_impurity_decrease)
    return std::nullopt;
  return best;
}

namespace {

std::vector<double> leaf_scores(const Dataset& data, std::span<const std::size_t> rows) {
  std::vector<double> scores(data.class_count, 0.0);
  for (std::size_t r : rows) scores[data.labels[r]] += 1.0;
  const double total = static_cast<double>(rows.size());
  for (double& s : scores) s /= total;
  return scores;
}

bool is_pure(const Dataset& data, std::span<const std::size_t> rows) {
  const int first = data.labels[rows.front()];
  for (std::size_t r : rows)
    if (data.labels[r] != first) return false;
  return true;
}

int build_node(const Dataset& data, const TreeParams& params, std::vector<std::size_t>& rows,
               int depth, TreeModel& tree) {
  const int node_id = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();

  if (depth >= params.max_depth || rows.size() < params.min_split || is_pure(data, rows)) {
    tree.nodes[node_id].scores = leaf_scores(data, rows);
    return node_id;
  }

  std::optional<SplitRule> rule = best_split(data, rows, params);
  if (!rule) {
    tree.nodes[node_id].scores = leaf_scores(data, rows);
    return node_id;
  }

  const FeatureColumn& col = data.features[rule->feature];
  std::vector<std::size_t> left_rows;
  std::vector<std::size_t> right_rows;
  if (col.type == FeatureType::numeric) {
    for (std::size_t r : rows)
      (col.values[r] < rule->threshold ? left_rows : right_rows).push_back(r);
  } else {
    for (std::size_t r : rows) {
      const int code = static_cast<int>(col.values[r]);
      const bool goes_left =
          std::binary_search(rule->left_codes.begin(), rule->left_codes.end(), code);
      (goes_left ? left_rows : right_rows).push_back(r);
    }
  }

  {
    TreeNode& node = tree.nodes[node_id];
    node.leaf = false;
    node.feature = rule->feature;
    if (col.type == FeatureType::numeric) {
      node.threshold = rule->threshold;
    } else {
      node.left_codes = rule->left_codes;
      std::vector<int> node_codes;
      for (std::size_t r : rows) node_codes.push_back(static_cast<int>(col.values[r]));
      std::sort(node_codes.begin(), node_codes.end());
      node_codes.erase(std::unique(node_codes.begin(), node_codes.end()), node_codes.end());
      for (int code : node_codes)
        if (!std::binary_search(rule->left_codes.begin(), rule->left_codes.end(), code))
          tree.nodes[node_id].right_codes.push_back(code);
    }
    node.default_left = left_rows.size() >= right_rows.size();
  }

  rows.clear();
  rows.shrink_to_fit();
  const int left_id = build_node(data, params, left_rows, depth + 1, tree);
  const int right_id = build_node(data, params, right_rows, depth + 1, tree);
  tree.nodes[node_id].left = left_id;
  tree.nodes[node_id].right = right_id;
  return node_id;
}

}  // namespace

TreeModel fit_tree(const Dataset& data, const TreeParams& params) {
  params.validate();
  if (data.size() == 0) throw std::invalid_argument("fit_tree: empty dataset");

  TreeModel tree;
  tree.class_count = data.class_count;
  tree.schema.reserve(data.features.size());
  for (const auto& col : data.features) tree.schema.push_back(col.type);

  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  build_node(data, params, rows, 0, tree);
  return tree;
}

ScoreMatrix predict_scores(const TreeModel& tree, const Dataset& data) {
  if (data.features.size() != tree.schema.size())
    throw std::runtime_error("predict_scores: feature count differs from training schema");
  for (std::size_t j = 0; j < tree.schema.size(); ++j)
    if (data.features[j].type != tree.schema[j])
      throw std::runtime_error("predict_scores: feature type differs from training schema");

  const std::size_t n = data.size();
  ScoreMatrix scores(n, static_cast<std::size_t>(tree.class_count));
  for (std::size_t i = 0; i < n; ++i) {
    const TreeNode* node = &tree.nodes[0];
    while (!node->leaf) {
      const FeatureColumn& col = data.features[node->feature];
      bool go_left;
      if (col.type == FeatureType::numeric) {
        go_left = col.values[i] < node->threshold;
      } else {
        const int code = static_cast<int>(col.values[i]);
        if (std::binary_search(node->left_codes.begin(), node->left_codes.end(), code))
          go_left = true;
        else if (std::binary_search(node->right_codes.begin(), node->right_codes.end(), code))
          go_left = false;
        else
          go_left = node->default_left;
      }
      node = &tree.nodes[go_left ? node->left : node->right];
    }
    std::copy(node->scores.begin(), node->scores.end(), scores.row(i).begin());
  }
  return scores;
}

std::vector<int> classify(const ScoreMatrix& scores) {
  std::vector<int> labels(scores.rows());
  for (std::size_t i = 0; i < scores.rows(); ++i) labels[i] = scores.row_class(i);
  return labels;
}

}  // namespace kfhe
