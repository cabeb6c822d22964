#include "kfhe/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "kfhe/baselines.hpp"
#include "kfhe/rng.hpp"

namespace kfhe {

std::string algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kfhe_e: return "kfhe-e";
    case Algorithm::kfhe_l: return "kfhe-l";
    case Algorithm::adaboost: return "adaboost";
    case Algorithm::bagging: return "bagging";
    case Algorithm::cart: return "cart";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "kfhe-e") return Algorithm::kfhe_e;
  if (name == "kfhe-l") return Algorithm::kfhe_l;
  if (name == "adaboost") return Algorithm::adaboost;
  if (name == "bagging") return Algorithm::bagging;
  if (name == "cart") return Algorithm::cart;
  return std::nullopt;
}

namespace {

struct TrainedOutcome {
  std::vector<int> predicted;
  int components = 0;
};

TrainedOutcome train_and_predict(Algorithm algorithm, const Dataset& train, const Dataset& test,
                                 const ExperimentConfig& config, std::uint64_t seed) {
  TrainedOutcome outcome;
  switch (algorithm) {
    case Algorithm::kfhe_e:
    case Algorithm::kfhe_l: {
      TrainConfig tc;
      tc.max_iterations = config.iterations;
      tc.tree = config.tree;
      tc.seed = seed;
      const Variant variant =
          algorithm == Algorithm::kfhe_e ? Variant::exponential : Variant::linear;
      const KfheModel model = kfhe_train(train, tc, variant);
      outcome.predicted = classify(kfhe_predict(model, test));
      outcome.components = static_cast<int>(model.trees.size());
      break;
    }
    case Algorithm::adaboost: {
      const SammeModel model = samme_train(train, config.iterations, config.tree, seed);
      outcome.predicted = classify(samme_predict(model, test));
      outcome.components = static_cast<int>(model.stages.size());
      break;
    }
    case Algorithm::bagging: {
      const BaggingModel model = bagging_train(train, config.iterations, config.tree, seed);
      outcome.predicted = classify(bagging_predict(model, test));
      outcome.components = static_cast<int>(model.trees.size());
      break;
    }
    case Algorithm::cart: {
      const TreeModel model = fit_tree(train, config.tree);
      outcome.predicted = classify(predict_scores(model, test));
      outcome.components = 1;
      break;
    }
  }
  return outcome;
}

std::string csv_double(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

}  // namespace

std::string noise_label(double noise) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%g", noise * 100.0);
  return buffer;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.datasets.empty()) throw std::invalid_argument("run_experiment: no datasets");
  if (config.algorithms.empty()) throw std::invalid_argument("run_experiment: no algorithms");
  for (double noise : config.noise_levels)
    if (!(noise >= 0.0 && noise <= 1.0))
      throw std::invalid_argument("run_experiment: noise level outside [0,1]");

  const std::size_t dataset_count = config.datasets.size();
  const std::size_t noise_count = config.noise_levels.size();
  const std::size_t algo_count = config.algorithms.size();

  std::vector<Dataset> clean;
  clean.reserve(dataset_count);
  std::vector<FoldPlan> plans;
  plans.reserve(dataset_count);
  const Rng master(config.seed);
  for (std::size_t d = 0; d < dataset_count; ++d) {
    LoadOptions options;
    options.label_column = config.datasets[d].label_column;
    clean.push_back(load_csv(config.datasets[d].path, options));
    plans.push_back(stratified_kfold(clean.back(), config.folds, config.repeats,
                                     master.derive(d).derive(0x466f6c64).next_u64()));
  }

  ExperimentResult result;
  result.records.resize(dataset_count * noise_count * config.repeats * config.folds * algo_count);

  const auto record_index = [&](std::size_t d, std::size_t nz, std::size_t rep, std::size_t fold,
                                std::size_t a) {
    return (((d * noise_count + nz) * config.repeats + rep) * config.folds + fold) * algo_count + a;
  };

  // One task per (dataset, noise, repeat): the noisy copy is shared by the
  // folds and algorithms inside it. Tasks are independent and their seeds
  // depend only on grid coordinates, so any schedule gives the same records.
  const std::size_t task_count = dataset_count * noise_count * config.repeats;
  std::atomic<std::size_t> next_task{0};

  const auto worker = [&]() {
    while (true) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= task_count) return;
      const std::size_t d = task / (noise_count * config.repeats);
      const std::size_t nz = (task / config.repeats) % noise_count;
      const std::size_t rep = task % config.repeats;

      const Dataset& base = clean[d];
      const double noise = config.noise_levels[nz];
      Dataset noisy;
      const Dataset* training_source = &base;
      if (noise > 0.0) {
        noisy = inject_label_noise(
                    base, noise,
                    master.derive(d).derive(0x4e6f6973).derive(nz).derive(rep).next_u64())
                    .data;
        training_source = &noisy;
      }

      for (std::size_t fold = 0; fold < config.folds; ++fold) {
        const std::vector<std::size_t> train_rows = plans[d].complement_rows(rep, static_cast<int>(fold));
        const std::vector<std::size_t> test_rows = plans[d].fold_rows(rep, static_cast<int>(fold));
        const Dataset train = training_source->take_rows(train_rows);
        const Dataset test = base.take_rows(test_rows);

        for (std::size_t a = 0; a < algo_count; ++a) {
          CellResult cell;
          cell.dataset = config.datasets[d].name;
          cell.algorithm = config.algorithms[a];
          cell.noise = noise;
          cell.repeat = rep;
          cell.fold = static_cast<int>(fold);
          const std::uint64_t cell_seed =
              master.derive(d).derive(nz).derive(rep).derive(fold).derive(a).next_u64();
          try {
            const auto start = std::chrono::steady_clock::now();
            const TrainedOutcome outcome =
                train_and_predict(config.algorithms[a], train, test, config, cell_seed);
            const auto stop = std::chrono::steady_clock::now();
            cell.train_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            cell.components = outcome.components;
            cell.macro_f1 =
                macro_f1(confusion(test.labels, outcome.predicted, base.class_count));
            cell.error_rate = misclassification_rate(test.labels, outcome.predicted);
          } catch (const std::exception& e) {
            cell.failed = true;
            cell.error = e.what();
            cell.macro_f1 = std::nan("");
            cell.error_rate = std::nan("");
          }
          result.records[record_index(d, nz, rep, fold, a)] = std::move(cell);
        }
      }
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }

  // Aggregate mean/sd per (dataset, algorithm, noise) over repeats x folds.
  for (std::size_t d = 0; d < dataset_count; ++d) {
    for (std::size_t a = 0; a < algo_count; ++a) {
      for (std::size_t nz = 0; nz < noise_count; ++nz) {
        double sum = 0.0;
        double sum_squares = 0.0;
        double error_sum = 0.0;
        std::size_t count = 0;
        for (std::size_t rep = 0; rep < config.repeats; ++rep) {
          for (std::size_t fold = 0; fold < config.folds; ++fold) {
            const CellResult& cell = result.records[record_index(d, nz, rep, fold, a)];
            if (cell.failed) continue;
            sum += cell.macro_f1;
            sum_squares += cell.macro_f1 * cell.macro_f1;
            error_sum += cell.error_rate;
            ++count;
          }
        }
        SummaryRow row;
        row.dataset = config.datasets[d].name;
        row.algorithm = config.algorithms[a];
        row.noise = config.noise_levels[nz];
        row.cells = count;
        if (count > 0) {
          row.mean_f1 = sum / static_cast<double>(count);
          const double variance =
              std::max(0.0, sum_squares / static_cast<double>(count) - row.mean_f1 * row.mean_f1);
          row.sd_f1 = std::sqrt(variance);
          row.mean_error = error_sum / static_cast<double>(count);
        } else {
          row.mean_f1 = std::nan("");
          row.sd_f1 = std::nan("");
          row.mean_error = std::nan("");
        }
        result.summary.push_back(std::move(row));
      }
    }
  }

  // Rank tables per noise level over the per-dataset mean F1.
  std::vector<std::string> algorithm_names;
  for (Algorithm a : config.algorithms) algorithm_names.push_back(algorithm_name(a));
  std::vector<std::string> dataset_names;
  for (const auto& spec : config.datasets) dataset_names.push_back(spec.name);

  for (std::size_t nz = 0; nz < noise_count; ++nz) {
    std::vector<std::vector<double>> scores(dataset_count, std::vector<double>(algo_count, 0.0));
    for (const SummaryRow& row : result.summary) {
      if (row.noise != config.noise_levels[nz]) continue;
      const auto d = static_cast<std::size_t>(
          std::find(dataset_names.begin(), dataset_names.end(), row.dataset) -
          dataset_names.begin());
      const auto a = static_cast<std::size_t>(
          std::find(config.algorithms.begin(), config.algorithms.end(), row.algorithm) -
          config.algorithms.begin());
      scores[d][a] = row.mean_f1;
    }
    result.rank_tables.emplace(config.noise_levels[nz],
                               average_ranks(algorithm_names, dataset_names, scores, true));
  }

  return result;
}

void write_results_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "dataset,algorithm,noise,repeat,fold,macro_f1,error_rate\n";
  for (const CellResult& cell : result.records) {
    out << cell.dataset << ',' << algorithm_name(cell.algorithm) << ',' << csv_double(cell.noise)
        << ',' << cell.repeat << ',' << cell.fold << ',' << csv_double(cell.macro_f1) << ','
        << csv_double(cell.error_rate) << "\n";
  }
}

void write_summary_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "dataset,algorithm,noise,mean_f1,sd_f1\n";
  for (const SummaryRow& row : result.summary) {
    out << row.dataset << ',' << algorithm_name(row.algorithm) << ',' << csv_double(row.noise)
        << ',' << csv_double(row.mean_f1) << ',' << csv_double(row.sd_f1) << "\n";
  }
}

void write_rank_csv(const RankTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "dataset";
  for (const auto& name : table.algorithms) out << ',' << name;
  out << "\n";
  for (std::size_t d = 0; d < table.datasets.size(); ++d) {
    out << table.datasets[d];
    for (std::size_t a = 0; a < table.algorithms.size(); ++a)
      out << ',' << csv_double(table.ranks[d][a]);
    out << "\n";
  }
  out << "average_rank";
  for (double mean : table.mean_ranks) out << ',' << csv_double(mean);
  out << "\n";
}

void write_trace_csv(const std::vector<TraceRow>& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "t,R_y,P_y,K_y,train_error\n";
  for (const TraceRow& row : trace) {
    out << row.iteration << ',' << csv_double(row.measurement_error) << ','
        << csv_double(row.variance) << ',' << csv_double(row.gain) << ','
        << csv_double(row.train_error) << "\n";
  }
}

}  // namespace kfhe
