#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kfhe/cart.hpp"
#include "kfhe/dataset.hpp"
#include "kfhe/score_matrix.hpp"

namespace kfhe {

// Weight-measurement function f in z_i = w_i * f(indicator_i), with the
// misclassification indicator coded 1/2 the way boolean arithmetic lands in
// the reference experiments:
//   linear       f(x) = x    -> correct x1, misclassified x2   (KFHE-l)
//   exponential  f(x) = e^x  -> correct x1, misclassified xe   (KFHE-e)
// (for the exponential variant the common factor e cancels when the weights
// are renormalised, so only the ratio matters)
enum class Variant { linear, exponential };

std::string variant_name(Variant variant);

// Model filter state: the ensemble's score-matrix estimate and its scalar
// variance.
struct KfmState {
  ScoreMatrix estimate;
  double variance = 1.0;
};

// Weight filter state: the sampling-weight estimate and its scalar variance.
struct KfwState {
  SampleWeights estimate;
  double variance = 1.0;
};

struct TrainConfig {
  int max_iterations = 100;  // T
  TreeParams tree;
  // Gain at or below this counts as "reached zero" and stops training.
  double gain_epsilon = 1e-9;
  // After this many consecutive rejected measurements the next one is
  // accepted regardless of its error.
  int max_consecutive_resets = 10;
  std::uint64_t seed = 0;
  // Replace tree scores with one-hot argmax rows before they enter the
  // filters (ablation switch; default keeps the soft leaf proportions).
  bool hard_scores = false;
};

struct TraceRow {
  int iteration = 0;
  double measurement_error = 0.0;  // R_t
  double variance = 0.0;           // P_t (posterior)
  double gain = 0.0;               // K_t
  double train_error = 0.0;        // ensemble misclassification on the training set
};

struct KfheModel {
  Variant variant = Variant::exponential;
  int class_count = 0;
  bool hard_scores = false;
  std::vector<TreeModel> trees;     // trees[0] seeds the estimate
  std::vector<double> gains;        // gains[t-1] pairs with trees[t], t >= 1
  std::vector<double> weight_gains; // kf-w gains, one per accepted iteration
  std::vector<TraceRow> trace;      // one row per accepted iteration
  std::vector<std::string> class_names;
  std::vector<FeatureType> schema;
  // Final training-set estimate, kept so a replayed prediction over the
  // training features can be checked against it. Not serialized.
  ScoreMatrix final_train_scores;
  int reset_count = 0;  // rejected measurements across the whole run
};

// --- scalar filter steps -----------------------------------------------

// Identity time update: the prior equals the previous posterior.
KfmState kfm_time_update(const KfmState& state);

// Measurement: elementwise average of the previous estimate and the new
// tree's scores.
ScoreMatrix kfm_measure(const ScoreMatrix& prev_estimate, const ScoreMatrix& tree_scores);

// Misclassification rate of the measurement's argmax against the labels.
double measurement_error(const ScoreMatrix& z, std::span<const int> labels);

// P / (P + R); defined as 0 when P = R = 0.
double kalman_gain(double variance_prior, double measurement_noise);

// prior + K * (z - prior), rows stay distributions for K in [0,1].
ScoreMatrix kalman_combine(const ScoreMatrix& prior, const ScoreMatrix& z, double gain);

// (1 - K) * P.
double variance_update(double variance_prior, double gain);

// Weight measurement z_i = w_i * f(misclassified_i) for the variant's f.
SampleWeights kfw_measure(const SampleWeights& weights, const std::vector<bool>& misclassified,
                          Variant variant);

// --- training / prediction ---------------------------------------------

KfheModel kfhe_train(const Dataset& dataset, const TrainConfig& config, Variant variant);

// Replays the stored gain sequence over fresh tree predictions.
ScoreMatrix kfhe_predict(const KfheModel& model, const Dataset& data);

const std::vector<TraceRow>& training_trace(const KfheModel& model);

}  // namespace kfhe
