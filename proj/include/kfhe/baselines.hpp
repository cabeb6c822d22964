#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kfhe/cart.hpp"
#include "kfhe/dataset.hpp"
#include "kfhe/score_matrix.hpp"

namespace kfhe {

struct BaggingModel {
  std::vector<TreeModel> trees;
  int class_count = 0;
  std::vector<std::string> class_names;
  std::vector<FeatureType> schema;
};

struct SammeStage {
  TreeModel tree;
  double alpha = 0.0;
};

// AdaBoost.SAMME with weight-resampled component trees. Stages where the
// weighted error reaches 1 - 1/c are skipped and the weights reset to
// uniform; a zero-error stage is stored with a capped alpha and stops
// training early.
struct SammeModel {
  std::vector<SammeStage> stages;
  int class_count = 0;
  std::vector<std::string> class_names;
  std::vector<FeatureType> schema;
};

BaggingModel bagging_train(const Dataset& dataset, int components, const TreeParams& params,
                           std::uint64_t seed);

// Soft vote: mean of the component trees' score rows.
ScoreMatrix bagging_predict(const BaggingModel& model, const Dataset& data);

SammeModel samme_train(const Dataset& dataset, int components, const TreeParams& params,
                       std::uint64_t seed);

// score(j) = sum of alphas of stages voting j, renormalized per row;
// all-zero rows become uniform.
ScoreMatrix samme_predict(const SammeModel& model, const Dataset& data);

}  // namespace kfhe
