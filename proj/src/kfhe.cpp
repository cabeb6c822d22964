#include "kfhe/kfhe.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "kfhe/rng.hpp"

namespace kfhe {

std::string variant_name(Variant variant) {
  return variant == Variant::linear ? "linear" : "exponential";
}

KfmState kfm_time_update(const KfmState& state) { return state; }

ScoreMatrix kfm_measure(const ScoreMatrix& prev_estimate, const ScoreMatrix& tree_scores) {
  if (!prev_estimate.same_shape(tree_scores))
    throw std::invalid_argument("kfm_measure: shape mismatch");
  ScoreMatrix z(prev_estimate.rows(), prev_estimate.cols());
  for (std::size_t i = 0; i < z.rows(); ++i) {
    auto out = z.row(i);
    const auto a = prev_estimate.row(i);
    const auto b = tree_scores.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = 0.5 * (a[j] + b[j]);
  }
  return z;
}

double measurement_error(const ScoreMatrix& z, std::span<const int> labels) {
  if (z.rows() != labels.size()) throw std::invalid_argument("measurement_error: shape mismatch");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < z.rows(); ++i)
    if (z.row_class(i) != labels[i]) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(z.rows());
}

double kalman_gain(double variance_prior, double measurement_noise) {
  const double denominator = variance_prior + measurement_noise;
  if (denominator == 0.0) return 0.0;
  return variance_prior / denominator;
}

ScoreMatrix kalman_combine(const ScoreMatrix& prior, const ScoreMatrix& z, double gain) {
  if (!(gain >= 0.0 && gain <= 1.0))
    throw std::invalid_argument("kalman_combine: gain outside [0,1]");
  if (!prior.same_shape(z)) throw std::invalid_argument("kalman_combine: shape mismatch");
  ScoreMatrix posterior(prior.rows(), prior.cols());
  for (std::size_t i = 0; i < prior.rows(); ++i) {
    auto out = posterior.row(i);
    const auto p = prior.row(i);
    const auto m = z.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = p[j] + gain * (m[j] - p[j]);
  }
  return posterior;
}

double variance_update(double variance_prior, double gain) {
  return (1.0 - gain) * variance_prior;
}

SampleWeights kfw_measure(const SampleWeights& weights, const std::vector<bool>& misclassified,
                          Variant variant) {
  if (weights.values.size() != misclassified.size())
    throw std::invalid_argument("kfw_measure: length mismatch");
  SampleWeights z;
  z.values.resize(weights.values.size());
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    const double f = variant == Variant::linear
                         ? (misclassified[i] ? 2.0 : 1.0)
                         : (misclassified[i] ? std::exp(1.0) : 1.0);
    z.values[i] = weights.values[i] * f;
  }
  return z;
}

namespace {

ScoreMatrix harden(ScoreMatrix scores) {
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    const int cls = scores.row_class(i);
    auto row = scores.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = 0.0;
    row[static_cast<std::size_t>(cls)] = 1.0;
  }
  return scores;
}

ScoreMatrix tree_scores_for(const TreeModel& tree, const Dataset& data, bool hard) {
  ScoreMatrix scores = predict_scores(tree, data);
  return hard ? harden(std::move(scores)) : scores;
}

// Sum to 1; all-zero vectors (possible under the linear variant when K = 1
// and everything was classified correctly) fall back to uniform.
void normalize_or_reset(SampleWeights& weights) {
  double total = 0.0;
  for (double w : weights.values) total += w;
  if (total <= 0.0) {
    weights = SampleWeights::uniform(weights.values.size());
    return;
  }
  for (double& w : weights.values) w /= total;
}

}  // namespace

KfheModel kfhe_train(const Dataset& dataset, const TrainConfig& config, Variant variant) {
  dataset.validate();
  config.tree.validate();
  if (config.max_iterations < 1)
    throw std::invalid_argument("kfhe_train: max_iterations must be >= 1");

  const std::size_t n = dataset.size();
  const int c = dataset.class_count;
  const double reject_threshold = 1.0 - 1.0 / static_cast<double>(c);
  const Rng root(config.seed);

  KfheModel model;
  model.variant = variant;
  model.class_count = c;
  model.hard_scores = config.hard_scores;
  model.class_names = dataset.class_names;
  model.schema.reserve(dataset.features.size());
  for (const auto& col : dataset.features) model.schema.push_back(col.type);

  // Initialisation: h_0 on a uniformly weighted resample seeds the estimate;
  // both variances start at 1 (fully uncertain).
  KfwState filter_w{SampleWeights::uniform(n), 1.0};

  {
    const Dataset sample =
        weighted_resample(dataset, filter_w.estimate, root.derive(0).next_u64());
    model.trees.push_back(fit_tree(sample, config.tree));
  }
  KfmState filter_y{tree_scores_for(model.trees[0], dataset, config.hard_scores), 1.0};

  // max_iterations is the total component budget: h_0 plus up to T-1
  // measured iterations.
  int consecutive_resets = 0;
  for (int t = 1; t < config.max_iterations; ++t) {
    // Attempt index keeps the resample stream moving across rejections.
    const std::uint64_t attempt_seed =
        root.derive(static_cast<std::uint64_t>(t))
            .derive(static_cast<std::uint64_t>(consecutive_resets))
            .next_u64();
    const Dataset sample = weighted_resample(dataset, filter_w.estimate, attempt_seed);
    TreeModel tree = fit_tree(sample, config.tree);
    const ScoreMatrix tree_scores = tree_scores_for(tree, dataset, config.hard_scores);

    const KfmState prior = kfm_time_update(filter_y);
    const ScoreMatrix z = kfm_measure(prior.estimate, tree_scores);
    const double r = measurement_error(z, dataset.labels);

    if (r > reject_threshold) {
      if (consecutive_resets < config.max_consecutive_resets) {
        // Measurement too noisy: drop the tree, restore uniform sampling
        // weights, redo this iteration. The weight variance is left alone so
        // both filters keep identical variances and therefore identical
        // gains at every accepted iteration.
        filter_w.estimate = SampleWeights::uniform(n);
        ++consecutive_resets;
        ++model.reset_count;
        --t;
        continue;
      }
      std::fprintf(stderr,
                   "kfhe_train: accepting measurement with error %.4f after %d consecutive "
                   "resets at iteration %d\n",
                   r, consecutive_resets, t);
    }
    consecutive_resets = 0;

    // kf-m measurement update.
    const double gain = kalman_gain(prior.variance, r);
    filter_y.estimate = kalman_combine(prior.estimate, z, gain);
    filter_y.variance = variance_update(prior.variance, gain);

    // kf-w measurement update with R^(w) = R^(y). Both variances start at 1
    // and receive the same update sequence, so gain_w == gain exactly.
    std::vector<bool> misclassified(n);
    for (std::size_t i = 0; i < n; ++i) misclassified[i] = z.row_class(i) != dataset.labels[i];
    const SampleWeights zw = kfw_measure(filter_w.estimate, misclassified, variant);
    const double gain_w = kalman_gain(filter_w.variance, r);
    for (std::size_t i = 0; i < n; ++i)
      filter_w.estimate.values[i] += gain_w * (zw.values[i] - filter_w.estimate.values[i]);
    filter_w.variance = variance_update(filter_w.variance, gain_w);
    normalize_or_reset(filter_w.estimate);

    model.trees.push_back(std::move(tree));
    model.gains.push_back(gain);
    model.weight_gains.push_back(gain_w);
    model.trace.push_back(TraceRow{
        .iteration = t,
        .measurement_error = r,
        .variance = filter_y.variance,
        .gain = gain,
        .train_error = measurement_error(filter_y.estimate, dataset.labels),
    });

    if (gain <= config.gain_epsilon) break;
  }

  model.final_train_scores = std::move(filter_y.estimate);
  return model;
}

ScoreMatrix kfhe_predict(const KfheModel& model, const Dataset& data) {
  if (model.trees.empty()) throw std::runtime_error("kfhe_predict: empty model");
  ScoreMatrix estimate = tree_scores_for(model.trees[0], data, model.hard_scores);
  for (std::size_t t = 1; t < model.trees.size(); ++t) {
    const ScoreMatrix tree_scores = tree_scores_for(model.trees[t], data, model.hard_scores);
    const ScoreMatrix z = kfm_measure(estimate, tree_scores);
    estimate = kalman_combine(estimate, z, model.gains[t - 1]);
  }
  return estimate;
}

const std::vector<TraceRow>& training_trace(const KfheModel& model) { return model.trace; }

}  // namespace kfhe
