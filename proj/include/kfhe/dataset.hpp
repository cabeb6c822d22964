#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kfhe {

enum class FeatureType { numeric, categorical };

// One feature column. Categorical columns store integer codes in `values`
// (exactly representable as doubles) indexing into `categories`.
struct FeatureColumn {
  std::string name;
  FeatureType type = FeatureType::numeric;
  std::vector<double> values;
  std::vector<std::string> categories;  // categorical only: code -> symbol
};

// Immutable after construction. Labels are dense class indices in
// [0, class_count). class_count may exceed the number of distinct labels
// present (e.g. in a CV fold subset); it never undercounts them.
struct Dataset {
  std::vector<FeatureColumn> features;
  std::vector<int> labels;
  std::vector<std::string> class_names;  // class index -> original label text
  int class_count = 0;

  std::size_t size() const { return labels.size(); }
  std::size_t feature_count() const { return features.size(); }

  // New dataset with the given rows (in order, repeats allowed); schema,
  // class names and class_count are preserved.
  Dataset take_rows(std::span<const std::size_t> rows) const;

  // Throws std::runtime_error on any broken invariant.
  void validate() const;
};

struct SampleWeights {
  std::vector<double> values;

  // All entries must be >= 0 with at least one > 0.
  void validate() const;
  static SampleWeights uniform(std::size_t n);
};

// Fold assignments for `repeat_count` independent stratified splits.
struct FoldPlan {
  std::size_t repeat_count = 0;
  std::size_t fold_count = 0;
  std::vector<std::vector<int>> assignments;  // [repeat][row] = fold id

  std::vector<std::size_t> fold_rows(std::size_t repeat, int fold) const;
  std::vector<std::size_t> complement_rows(std::size_t repeat, int fold) const;
};

struct LoadOptions {
  // Label column by name; empty selects the last column.
  std::string label_column;
  // Force a column to a type (by column name). Unlisted columns are numeric
  // when every cell parses as a real number, categorical otherwise.
  std::vector<std::pair<std::string, FeatureType>> type_overrides;
};

// Reads a UTF-8, comma-separated file with a header row. Labels are
// re-encoded to dense 0..c-1 integers in first-appearance order. Rejects
// missing cells (with row/column location) and files with fewer than two
// distinct labels.
Dataset load_csv(const std::string& path, const LoadOptions& options = {});

// Deterministic stratified k-fold plan: per repeat, each class's members are
// shuffled and dealt round-robin, so per-class fold counts differ by at most
// one. Throws if k > n or k < 2.
FoldPlan stratified_kfold(const Dataset& dataset, std::size_t k, std::size_t repeats,
                          std::uint64_t seed);

// n i.i.d. draws with replacement, P(i) = weights[i] / sum(weights).
Dataset weighted_resample(const Dataset& dataset, const SampleWeights& weights,
                          std::uint64_t seed);

struct NoisyDataset {
  Dataset data;
  std::vector<std::size_t> changed;  // sorted row indices whose label changed
};

// Flips exactly round(fraction * n) labels, chosen uniformly without
// replacement; each new label is drawn uniformly from the other c-1 classes.
NoisyDataset inject_label_noise(const Dataset& dataset, double fraction, std::uint64_t seed);

}  // namespace kfhe
