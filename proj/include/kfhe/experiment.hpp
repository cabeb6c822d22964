#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kfhe/cart.hpp"
#include "kfhe/dataset.hpp"
#include "kfhe/kfhe.hpp"
#include "kfhe/metrics.hpp"

namespace kfhe {

enum class Algorithm { kfhe_e, kfhe_l, adaboost, bagging, cart };

std::string algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(const std::string& name);

struct DatasetSpec {
  std::string name;
  std::string path;
  std::string label_column;  // empty = last column
};

struct ExperimentConfig {
  std::vector<DatasetSpec> datasets;
  std::vector<Algorithm> algorithms = {Algorithm::kfhe_e, Algorithm::kfhe_l, Algorithm::adaboost,
                                       Algorithm::bagging, Algorithm::cart};
  int iterations = 100;  // ensemble components T
  TreeParams tree;
  std::vector<double> noise_levels = {0.0, 0.05, 0.10, 0.15, 0.20};
  std::size_t repeats = 20;
  std::size_t folds = 4;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int jobs = 1;
};

// One record per (dataset, algorithm, noise, repeat, fold) grid cell.
struct CellResult {
  std::string dataset;
  Algorithm algorithm = Algorithm::cart;
  double noise = 0.0;
  std::size_t repeat = 0;
  int fold = 0;
  double macro_f1 = 0.0;
  double error_rate = 0.0;
  double train_ms = 0.0;
  int components = 0;
  bool failed = false;
  std::string error;
};

struct SummaryRow {
  std::string dataset;
  Algorithm algorithm = Algorithm::cart;
  double noise = 0.0;
  double mean_f1 = 0.0;
  double sd_f1 = 0.0;
  double mean_error = 0.0;
  std::size_t cells = 0;
};

struct ExperimentResult {
  std::vector<CellResult> records;
  std::vector<SummaryRow> summary;
  std::map<double, RankTable> rank_tables;  // keyed by noise level
};

// Per grid cell: stratified folds are built once per dataset on the clean
// data; label noise is injected into a whole-dataset copy once per
// (noise, repeat); training uses the noisy training portion and macro-F1 is
// always measured against the original labels. Fully deterministic from the
// config seed; cells whose training throws are recorded as failed and the
// run continues.
ExperimentResult run_experiment(const ExperimentConfig& config);

// results.csv: dataset,algorithm,noise,repeat,fold,macro_f1,error_rate
void write_results_csv(const ExperimentResult& result, const std::string& path);
// summary.csv / sweep.csv: dataset,algorithm,noise,mean_f1,sd_f1
void write_summary_csv(const ExperimentResult& result, const std::string& path);
// ranks_<label>.csv: per-dataset ranks plus an average_rank row.
void write_rank_csv(const RankTable& table, const std::string& path);
// trace CSV: t,R_y,P_y,K_y,train_error
void write_trace_csv(const std::vector<TraceRow>& trace, const std::string& path);

// "0", "5", "10"... used in ranks_<label>.csv filenames.
std::string noise_label(double noise);

}  // namespace kfhe
