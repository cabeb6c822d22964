// Command-line harness: train/predict single models, run the cross-validation
// benchmark grid, sweep label-noise levels, and dump per-iteration traces.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "kfhe/baselines.hpp"
#include "kfhe/experiment.hpp"
#include "kfhe/model_io.hpp"

using namespace kfhe;

namespace {

struct CommonFlags {
  std::uint64_t seed = 1;
  int iterations = 100;
  TreeParams tree;
};

// Key/value config file: one `key = value` per line, '#' comments. Lists are
// comma separated. Flags given on the command line win over file values.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const auto trim = [](std::string s) {
      const auto begin = s.find_first_not_of(" \t\r");
      const auto end = s.find_last_not_of(" \t\r");
      return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) values[key] = value;
  }
  return values;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  for (char ch : text) {
    if (ch == ',') {
      items.push_back(item);
      item.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      item.push_back(ch);
    }
  }
  if (!item.empty()) items.push_back(item);
  return items;
}

// Dataset name = file stem, e.g. data/iris.csv -> iris.
DatasetSpec spec_from_path(const std::string& path, const std::string& label_column) {
  return DatasetSpec{std::filesystem::path(path).stem().string(), path, label_column};
}

int cmd_train(const std::string& data_path, const std::string& label_column,
              const std::string& algorithm, const CommonFlags& flags,
              const std::string& model_path, const std::string& trace_path, bool hard_scores) {
  const auto algo = parse_algorithm(algorithm);
  if (!algo) {
    std::cerr << "unknown algorithm '" << algorithm
              << "' (expected kfhe-e, kfhe-l, adaboost, bagging or cart)\n";
    return 2;
  }

  LoadOptions options;
  options.label_column = label_column;
  const Dataset data = load_csv(data_path, options);

  ModelEnvelope envelope;
  envelope.algorithm = algorithm;
  envelope.class_count = data.class_count;
  envelope.class_names = data.class_names;
  envelope.schema = capture_schema(data);

  switch (*algo) {
    case Algorithm::kfhe_e:
    case Algorithm::kfhe_l: {
      TrainConfig config;
      config.max_iterations = flags.iterations;
      config.tree = flags.tree;
      config.seed = flags.seed;
      config.hard_scores = hard_scores;
      envelope.kfhe = kfhe_train(
          data, config, *algo == Algorithm::kfhe_e ? Variant::exponential : Variant::linear);
      if (!trace_path.empty()) write_trace_csv(envelope.kfhe.trace, trace_path);
      break;
    }
    case Algorithm::adaboost:
      envelope.samme = samme_train(data, flags.iterations, flags.tree, flags.seed);
      break;
    case Algorithm::bagging:
      envelope.bagging = bagging_train(data, flags.iterations, flags.tree, flags.seed);
      break;
    case Algorithm::cart:
      envelope.cart = fit_tree(data, flags.tree);
      break;
  }

  save_model(envelope, model_path);
  std::cout << "wrote " << model_path << "\n";
  if (!trace_path.empty() && (*algo == Algorithm::kfhe_e || *algo == Algorithm::kfhe_l))
    std::cout << "wrote " << trace_path << "\n";
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
  const ModelEnvelope envelope = load_model(model_path);
  const Dataset data = read_features(data_path, envelope.schema);

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << "row";
  for (const auto& name : envelope.class_names) out << ",score_" << name;
  out << ",predicted\n";

  if (data.size() > 0) {
    const ScoreMatrix scores = envelope_predict(envelope, data);
    const std::vector<int> predicted = classify(scores);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
      out << i;
      char buffer[32];
      for (std::size_t j = 0; j < scores.cols(); ++j) {
        std::snprintf(buffer, sizeof(buffer), "%.9f", scores.at(i, j));
        out << ',' << buffer;
      }
      out << ',' << envelope.class_names[predicted[i]] << "\n";
    }
  }
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_benchmark(const ExperimentConfig& config, bool sweep_only) {
  std::filesystem::create_directories(config.out_dir);
  const ExperimentResult result = run_experiment(config);

  const auto out = [&](const std::string& name) {
    return (std::filesystem::path(config.out_dir) / name).string();
  };

  if (sweep_only) {
    write_summary_csv(result, out("sweep.csv"));
    std::cout << "wrote " << out("sweep.csv") << "\n";
    return 0;
  }

  write_results_csv(result, out("results.csv"));
  write_summary_csv(result, out("summary.csv"));
  for (const auto& [noise, table] : result.rank_tables) {
    const std::string name = "ranks_" + noise_label(noise) + ".csv";
    write_rank_csv(table, out(name));
  }
  std::cout << "wrote " << out("results.csv") << " and summaries for "
            << result.rank_tables.size() << " noise level(s)\n";

  std::size_t failed = 0;
  for (const CellResult& cell : result.records) failed += cell.failed ? 1 : 0;
  if (failed > 0) std::cerr << failed << " grid cell(s) failed; see results.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KFHE ensemble benchmark harness"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string config_path;

  // train
  auto* train = app.add_subcommand("train", "train one model and write a model file");
  std::string train_data, train_label, train_algo = "kfhe-e", train_model = "model.txt",
                           train_trace;
  bool hard_scores = false;
  std::string variant_flag;
  train->add_option("--data", train_data, "training CSV")->required();
  train->add_option("--label-column", train_label, "label column name (default: last column)");
  train->add_option("--algo", train_algo, "kfhe-e | kfhe-l | adaboost | bagging | cart");
  train->add_option("--variant", variant_flag, "e|l shorthand selecting the KFHE variant");
  train->add_option("--iterations", flags.iterations, "ensemble components T");
  train->add_option("--seed", flags.seed, "RNG seed");
  train->add_option("--out", train_model, "model file path");
  train->add_option("--trace", train_trace, "also write the training trace CSV here");
  train->add_flag("--hard-scores", hard_scores, "use one-hot tree votes inside KFHE");

  // predict
  auto* predict = app.add_subcommand("predict", "apply a saved model to a CSV");
  std::string predict_model, predict_data, predict_out = "predictions.csv";
  predict->add_option("--model", predict_model, "model file")->required();
  predict->add_option("--data", predict_data, "input CSV (label column ignored)")->required();
  predict->add_option("--out", predict_out, "predictions CSV path");

  // benchmark / noise-sweep share their grid flags
  ExperimentConfig bench;
  std::vector<std::string> bench_data;
  std::vector<std::string> bench_algos;
  std::vector<double> bench_noise;
  std::string bench_label_column;

  const auto add_grid_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file (flags win)");
    cmd->add_option("--data", bench_data, "dataset CSV paths (repeatable)");
    cmd->add_option("--label-column", bench_label_column, "label column for all datasets");
    cmd->add_option("--algos", bench_algos, "algorithms (default: all five)");
    cmd->add_option("--iterations", bench.iterations, "ensemble components T");
    cmd->add_option("--noise", bench_noise, "noise fractions (default 0,0.05,0.1,0.15,0.2)");
    cmd->add_option("--repeats", bench.repeats, "CV repeats (default 20)");
    cmd->add_option("--folds", bench.folds, "CV folds (default 4)");
    cmd->add_option("--seed", bench.seed, "master seed");
    cmd->add_option("--out", bench.out_dir, "output directory");
    cmd->add_option("--jobs", bench.jobs, "worker threads");
  };

  auto* benchmark = app.add_subcommand("benchmark", "run the cross-validation grid");
  add_grid_flags(benchmark);
  auto* sweep = app.add_subcommand("noise-sweep", "emit noise-vs-F1 long-format CSV");
  add_grid_flags(sweep);

  // trace
  auto* trace = app.add_subcommand("trace", "train a KFHE model and write its trace CSV");
  std::string trace_data, trace_label, trace_out = "trace.csv", trace_variant = "e";
  trace->add_option("--data", trace_data, "training CSV")->required();
  trace->add_option("--label-column", trace_label, "label column name");
  trace->add_option("--variant", trace_variant, "e|l");
  trace->add_option("--iterations", flags.iterations, "ensemble components T");
  trace->add_option("--seed", flags.seed, "RNG seed");
  trace->add_option("--out", trace_out, "trace CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      if (!variant_flag.empty()) {
        if (variant_flag == "e") train_algo = "kfhe-e";
        else if (variant_flag == "l") train_algo = "kfhe-l";
        else throw std::runtime_error("--variant must be e or l");
      }
      return cmd_train(train_data, train_label, train_algo, flags, train_model, train_trace,
                       hard_scores);
    }

    if (predict->parsed()) return cmd_predict(predict_model, predict_data, predict_out);

    if (trace->parsed()) {
      LoadOptions options;
      options.label_column = trace_label;
      const Dataset data = load_csv(trace_data, options);
      TrainConfig config;
      config.max_iterations = flags.iterations;
      config.seed = flags.seed;
      const Variant variant = trace_variant == "l" ? Variant::linear : Variant::exponential;
      const KfheModel model = kfhe_train(data, config, variant);
      write_trace_csv(model.trace, trace_out);
      std::cout << "wrote " << trace_out << " (" << model.trace.size() << " iterations)\n";
      return 0;
    }

    // benchmark / noise-sweep
    if (!config_path.empty()) {
      const auto values = parse_config_file(config_path);
      const auto get = [&](const char* key) -> std::string {
        const auto it = values.find(key);
        return it == values.end() ? std::string() : it->second;
      };
      if (bench_data.empty() && !get("datasets").empty()) bench_data = split_list(get("datasets"));
      if (bench_algos.empty() && !get("algorithms").empty())
        bench_algos = split_list(get("algorithms"));
      if (bench_noise.empty() && !get("noise_levels").empty())
        for (const auto& item : split_list(get("noise_levels"))) bench_noise.push_back(std::stod(item));
      if (bench_label_column.empty()) bench_label_column = get("label_column");
      if (!get("iterations").empty() && benchmark->count("--iterations") == 0 &&
          sweep->count("--iterations") == 0)
        bench.iterations = std::stoi(get("iterations"));
      if (!get("repeats").empty() && benchmark->count("--repeats") == 0 &&
          sweep->count("--repeats") == 0)
        bench.repeats = std::stoull(get("repeats"));
      if (!get("folds").empty() && benchmark->count("--folds") == 0 && sweep->count("--folds") == 0)
        bench.folds = std::stoull(get("folds"));
      if (!get("seed").empty() && benchmark->count("--seed") == 0 && sweep->count("--seed") == 0)
        bench.seed = std::stoull(get("seed"));
      if (!get("out_dir").empty() && benchmark->count("--out") == 0 && sweep->count("--out") == 0)
        bench.out_dir = get("out_dir");
      if (!get("jobs").empty() && benchmark->count("--jobs") == 0 && sweep->count("--jobs") == 0)
        bench.jobs = std::stoi(get("jobs"));
    }

    if (bench_data.empty()) throw std::runtime_error("no datasets given (--data or config file)");
    for (const auto& path : bench_data)
      bench.datasets.push_back(spec_from_path(path, bench_label_column));
    if (!bench_algos.empty()) {
      bench.algorithms.clear();
      for (const auto& name : bench_algos) {
        const auto algo = parse_algorithm(name);
        if (!algo) throw std::runtime_error("unknown algorithm '" + name + "'");
        bench.algorithms.push_back(*algo);
      }
    }
    if (!bench_noise.empty()) bench.noise_levels = bench_noise;
    return run_benchmark(bench, sweep->parsed());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
