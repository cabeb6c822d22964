#include "kfhe/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "kfhe/rng.hpp"

namespace kfhe {

namespace {

std::vector<FeatureType> schema_of(const Dataset& dataset) {
  std::vector<FeatureType> schema;
  schema.reserve(dataset.features.size());
  for (const auto& col : dataset.features) schema.push_back(col.type);
  return schema;
}

}  // namespace

BaggingModel bagging_train(const Dataset& dataset, int components, const TreeParams& params,
                           std::uint64_t seed) {
  dataset.validate();
  params.validate();
  if (components < 1) throw std::invalid_argument("bagging_train: components must be >= 1");

  BaggingModel model;
  model.class_count = dataset.class_count;
  model.class_names = dataset.class_names;
  model.schema = schema_of(dataset);

  const Rng root(seed);
  const SampleWeights uniform = SampleWeights::uniform(dataset.size());
  model.trees.reserve(components);
  for (int t = 0; t < components; ++t) {
    const Dataset bootstrap =
        weighted_resample(dataset, uniform, root.derive(static_cast<std::uint64_t>(t)).next_u64());
    model.trees.push_back(fit_tree(bootstrap, params));
  }
  return model;
}

ScoreMatrix bagging_predict(const BaggingModel& model, const Dataset& data) {
  if (model.trees.empty()) throw std::runtime_error("bagging_predict: empty model");
  ScoreMatrix sum(data.size(), static_cast<std::size_t>(model.class_count));
  for (const TreeModel& tree : model.trees) {
    const ScoreMatrix scores = predict_scores(tree, data);
    for (std::size_t i = 0; i < sum.rows(); ++i) {
      auto acc = sum.row(i);
      const auto part = scores.row(i);
      for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += part[j];
    }
  }
  const double scale = 1.0 / static_cast<double>(model.trees.size());
  for (std::size_t i = 0; i < sum.rows(); ++i)
    for (double& v : sum.row(i)) v *= scale;
  return sum;
}

SammeModel samme_train(const Dataset& dataset, int components, const TreeParams& params,
                       std::uint64_t seed) {
  dataset.validate();
  params.validate();
  if (components < 1) throw std::invalid_argument("samme_train: components must be >= 1");

  const std::size_t n = dataset.size();
  const int c = dataset.class_count;
  const double error_ceiling = 1.0 - 1.0 / static_cast<double>(c);

  SammeModel model;
  model.class_count = c;
  model.class_names = dataset.class_names;
  model.schema = schema_of(dataset);

  const Rng root(seed);
  SampleWeights weights = SampleWeights::uniform(n);

  for (int t = 0; t < components; ++t) {
    const Dataset sample =
        weighted_resample(dataset, weights, root.derive(static_cast<std::uint64_t>(t)).next_u64());
    TreeModel tree = fit_tree(sample, params);
    const std::vector<int> predicted = classify(predict_scores(tree, dataset));

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (predicted[i] != dataset.labels[i]) err += weights.values[i];

    if (err >= error_ceiling) {
      weights = SampleWeights::uniform(n);
      continue;
    }

    if (err == 0.0) {
      const double alpha = std::log(1e12 * static_cast<double>(c - 1));
      model.stages.push_back(SammeStage{std::move(tree), alpha});
      break;
    }

    const double alpha = std::log((1.0 - err) / err) + std::log(static_cast<double>(c - 1));
    const double boost = std::exp(alpha);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (predicted[i] != dataset.labels[i]) weights.values[i] *= boost;
      total += weights.values[i];
    }
    for (double& w : weights.values) w /= total;

    model.stages.push_back(SammeStage{std::move(tree), alpha});
  }
  return model;
}

ScoreMatrix samme_predict(const SammeModel& model, const Dataset& data) {
  ScoreMatrix scores(data.size(), static_cast<std::size_t>(model.class_count));
  for (const SammeStage& stage : model.stages) {
    const std::vector<int> votes = classify(predict_scores(stage.tree, data));
    for (std::size_t i = 0; i < scores.rows(); ++i)
      scores.at(i, static_cast<std::size_t>(votes[i])) += stage.alpha;
  }
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    auto row = scores.row(i);
    double total = 0.0;
    for (double v : row) total += v;
    if (total <= 0.0) {
      for (double& v : row) v = 1.0 / static_cast<double>(row.size());
    } else {
      for (double& v : row) v /= total;
    }
  }
  return scores;
}

}  // namespace kfhe
