#include "kfhe/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace kfhe {

namespace {

constexpr const char* kMagic = "kfhe-ensemble v1";

std::string fmt(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("model io: cannot format double");
  return std::string(buffer, ptr);
}

double parse_double(const std::string& text) {
  double value;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::runtime_error("model io: bad number '" + text + "'");
  return value;
}

class LineReader {
 public:
  explicit LineReader(const std::string& path) : in_(path), path_(path) {
    if (!in_) throw std::runtime_error("model io: cannot open '" + path + "'");
  }

  std::string next() {
    std::string line;
    while (std::getline(in_, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return line;
    }
    throw std::runtime_error("model io: unexpected end of '" + path_ + "'");
  }

 private:
  std::ifstream in_;
  std::string path_;
};

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

// Name is everything after `skip` space-separated tokens.
std::string tail_after(const std::string& line, int skip) {
  std::size_t pos = 0;
  for (int i = 0; i < skip; ++i) {
    pos = line.find(' ', pos);
    if (pos == std::string::npos) throw std::runtime_error("model io: malformed line: " + line);
    ++pos;
  }
  return line.substr(pos);
}

void write_tree(std::ofstream& out, const TreeModel& tree, std::size_t index) {
  out << "tree " << index << " nodes " << tree.nodes.size() << "\n";
  for (const TreeNode& node : tree.nodes) {
    if (node.leaf) {
      out << "n leaf";
      for (double s : node.scores) out << ' ' << fmt(s);
      out << "\n";
    } else if (node.left_codes.empty() && node.right_codes.empty()) {
      out << "n num " << node.feature << ' ' << fmt(node.threshold) << ' ' << node.left << ' '
          << node.right << ' ' << (node.default_left ? 1 : 0) << "\n";
    } else {
      out << "n cat " << node.feature << ' ' << node.left << ' ' << node.right << ' '
          << (node.default_left ? 1 : 0) << " lc " << node.left_codes.size();
      for (int code : node.left_codes) out << ' ' << code;
      out << " rc " << node.right_codes.size();
      for (int code : node.right_codes) out << ' ' << code;
      out << "\n";
    }
  }
}

TreeModel read_tree(LineReader& reader, int class_count, const std::vector<SchemaColumn>& schema) {
  const std::vector<std::string> header = tokens_of(reader.next());
  if (header.size() != 4 || header[0] != "tree" || header[2] != "nodes")
    throw std::runtime_error("model io: expected tree header");
  const std::size_t node_count = std::stoull(header[3]);

  TreeModel tree;
  tree.class_count = class_count;
  for (const auto& col : schema) tree.schema.push_back(col.type);
  tree.nodes.reserve(node_count);

  for (std::size_t i = 0; i < node_count; ++i) {
    const std::vector<std::string> parts = tokens_of(reader.next());
    if (parts.size() < 2 || parts[0] != "n")
      throw std::runtime_error("model io: expected node line");
    TreeNode node;
    if (parts[1] == "leaf") {
      if (parts.size() != 2 + static_cast<std::size_t>(class_count))
        throw std::runtime_error("model io: leaf score count mismatch");
      for (int j = 0; j < class_count; ++j) node.scores.push_back(parse_double(parts[2 + j]));
    } else if (parts[1] == "num") {
      node.leaf = false;
      node.feature = std::stoi(parts[2]);
      node.threshold = parse_double(parts[3]);
      node.left = std::stoi(parts[4]);
      node.right = std::stoi(parts[5]);
      node.default_left = parts[6] == "1";
    } else if (parts[1] == "cat") {
      node.leaf = false;
      node.feature = std::stoi(parts[2]);
      node.left = std::stoi(parts[3]);
      node.right = std::stoi(parts[4]);
      node.default_left = parts[5] == "1";
      std::size_t pos = 6;
      if (parts[pos] != "lc") throw std::runtime_error("model io: expected lc");
      const std::size_t left_count = std::stoull(parts[pos + 1]);
      pos += 2;
      for (std::size_t j = 0; j < left_count; ++j) node.left_codes.push_back(std::stoi(parts[pos + j]));
      pos += left_count;
      if (parts[pos] != "rc") throw std::runtime_error("model io: expected rc");
      const std::size_t right_count = std::stoull(parts[pos + 1]);
      pos += 2;
      for (std::size_t j = 0; j < right_count; ++j)
        node.right_codes.push_back(std::stoi(parts[pos + j]));
    } else {
      throw std::runtime_error("model io: unknown node kind '" + parts[1] + "'");
    }
    tree.nodes.push_back(std::move(node));
  }
  return tree;
}

}  // namespace

std::vector<SchemaColumn> capture_schema(const Dataset& dataset) {
  std::vector<SchemaColumn> schema;
  schema.reserve(dataset.features.size());
  for (const auto& col : dataset.features)
    schema.push_back(SchemaColumn{col.name, col.type, col.categories});
  return schema;
}

void save_model(const ModelEnvelope& envelope, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("model io: cannot write '" + path + "'");

  out << kMagic << "\n";
  out << "algorithm " << envelope.algorithm << "\n";
  out << "classes " << envelope.class_count << "\n";
  for (const auto& name : envelope.class_names) out << "c " << name << "\n";
  out << "features " << envelope.schema.size() << "\n";
  for (const auto& col : envelope.schema) {
    if (col.type == FeatureType::numeric) {
      out << "f num " << col.name << "\n";
    } else {
      out << "f cat " << col.categories.size() << ' ' << col.name << "\n";
      for (const auto& symbol : col.categories) out << "v " << symbol << "\n";
    }
  }

  if (envelope.algorithm == "kfhe-e" || envelope.algorithm == "kfhe-l") {
    const KfheModel& model = envelope.kfhe;
    out << "variant " << variant_name(model.variant) << "\n";
    out << "hard_scores " << (model.hard_scores ? 1 : 0) << "\n";
    out << "trees " << model.trees.size() << "\n";
    for (std::size_t t = 0; t < model.trees.size(); ++t) write_tree(out, model.trees[t], t);
    out << "gains " << model.gains.size() << "\n";
    for (double gain : model.gains) out << "g " << fmt(gain) << "\n";
  } else if (envelope.algorithm == "adaboost") {
    const SammeModel& model = envelope.samme;
    out << "trees " << model.stages.size() << "\n";
    for (std::size_t t = 0; t < model.stages.size(); ++t) write_tree(out, model.stages[t].tree, t);
    out << "alphas " << model.stages.size() << "\n";
    for (const auto& stage : model.stages) out << "a " << fmt(stage.alpha) << "\n";
  } else if (envelope.algorithm == "bagging") {
    const BaggingModel& model = envelope.bagging;
    out << "trees " << model.trees.size() << "\n";
    for (std::size_t t = 0; t < model.trees.size(); ++t) write_tree(out, model.trees[t], t);
  } else if (envelope.algorithm == "cart") {
    out << "trees 1\n";
    write_tree(out, envelope.cart, 0);
  } else {
    throw std::runtime_error("model io: unknown algorithm '" + envelope.algorithm + "'");
  }
  out << "end\n";
  if (!out) throw std::runtime_error("model io: write failed for '" + path + "'");
}

ModelEnvelope load_model(const std::string& path) {
  LineReader reader(path);
  if (reader.next() != kMagic) throw std::runtime_error("model io: bad magic in '" + path + "'");

  ModelEnvelope envelope;
  {
    const std::string line = reader.next();
    if (line.rfind("algorithm ", 0) != 0) throw std::runtime_error("model io: expected algorithm");
    envelope.algorithm = tail_after(line, 1);
  }
  {
    const std::vector<std::string> parts = tokens_of(reader.next());
    if (parts.size() != 2 || parts[0] != "classes")
      throw std::runtime_error("model io: expected classes");
    envelope.class_count = std::stoi(parts[1]);
  }
  for (int i = 0; i < envelope.class_count; ++i) {
    const std::string line = reader.next();
    if (line.rfind("c ", 0) != 0) throw std::runtime_error("model io: expected class name");
    envelope.class_names.push_back(tail_after(line, 1));
  }
  {
    const std::vector<std::string> parts = tokens_of(reader.next());
    if (parts.size() != 2 || parts[0] != "features")
      throw std::runtime_error("model io: expected features");
    const int feature_count = std::stoi(parts[1]);
    for (int i = 0; i < feature_count; ++i) {
      const std::string line = reader.next();
      SchemaColumn col;
      if (line.rfind("f num ", 0) == 0) {
        col.type = FeatureType::numeric;
        col.name = tail_after(line, 2);
      } else if (line.rfind("f cat ", 0) == 0) {
        col.type = FeatureType::categorical;
        const std::vector<std::string> header = tokens_of(line);
        const int category_count = std::stoi(header[2]);
        col.name = tail_after(line, 3);
        for (int j = 0; j < category_count; ++j) {
          const std::string value_line = reader.next();
          if (value_line.rfind("v ", 0) != 0)
            throw std::runtime_error("model io: expected category value");
          col.categories.push_back(tail_after(value_line, 1));
        }
      } else {
        throw std::runtime_error("model io: bad feature line: " + line);
      }
      envelope.schema.push_back(std::move(col));
    }
  }

  const auto read_trees = [&](std::size_t count) {
    std::vector<TreeModel> trees;
    trees.reserve(count);
    for (std::size_t t = 0; t < count; ++t)
      trees.push_back(read_tree(reader, envelope.class_count, envelope.schema));
    return trees;
  };

  if (envelope.algorithm == "kfhe-e" || envelope.algorithm == "kfhe-l") {
    KfheModel& model = envelope.kfhe;
    {
      const std::vector<std::string> parts = tokens_of(reader.next());
      if (parts.size() != 2 || parts[0] != "variant")
        throw std::runtime_error("model io: expected variant");
      model.variant = parts[1] == "linear" ? Variant::linear : Variant::exponential;
    }
    {
      const std::vector<std::string> parts = tokens_of(reader.next());
      if (parts.size() != 2 || parts[0] != "hard_scores")
        throw std::runtime_error("model io: expected hard_scores");
      model.hard_scores = parts[1] == "1";
    }
    const std::vector<std::string> tree_header = tokens_of(reader.next());
    if (tree_header.size() != 2 || tree_header[0] != "trees")
      throw std::runtime_error("model io: expected trees");
    model.trees = read_trees(std::stoull(tree_header[1]));
    const std::vector<std::string> gain_header = tokens_of(reader.next());
    if (gain_header.size() != 2 || gain_header[0] != "gains")
      throw std::runtime_error("model io: expected gains");
    const std::size_t gain_count = std::stoull(gain_header[1]);
    if (gain_count + 1 != model.trees.size())
      throw std::runtime_error("model io: gain count must be tree count - 1");
    for (std::size_t i = 0; i < gain_count; ++i) {
      const std::vector<std::string> parts = tokens_of(reader.next());
      if (parts.size() != 2 || parts[0] != "g") throw std::runtime_error("model io: expected gain");
      model.gains.push_back(parse_double(parts[1]));
    }
    model.class_count = envelope.class_count;
    model.class_names = envelope.class_names;
    for (const auto& col : envelope.schema) model.schema.push_back(col.type);
  } else if (envelope.algorithm == "adaboost") {
    SammeModel& model = envelope.samme;
    const std::vector<std::string> tree_header = tokens_of(reader.next());
    if (tree_header.size() != 2 || tree_header[0] != "trees")
      throw std::runtime_error("model io: expected trees");
    std::vector<TreeModel> trees = read_trees(std::stoull(tree_header[1]));
    const std::vector<std::string> alpha_header = tokens_of(reader.next());
    if (alpha_header.size() != 2 || alpha_header[0] != "alphas" ||
        std::stoull(alpha_header[1]) != trees.size())
      throw std::runtime_error("model io: expected matching alphas");
    for (auto& tree : trees) {
      const std::vector<std::string> parts = tokens_of(reader.next());
      if (parts.size() != 2 || parts[0] != "a") throw std::runtime_error("model io: expected alpha");
      model.stages.push_back(SammeStage{std::move(tree), parse_double(parts[1])});
    }
    model.class_count = envelope.class_count;
    model.class_names = envelope.class_names;
    for (const auto& col : envelope.schema) model.schema.push_back(col.type);
  } else if (envelope.algorithm == "bagging") {
    BaggingModel& model = envelope.bagging;
    const std::vector<std::string> tree_header = tokens_of(reader.next());
    if (tree_header.size() != 2 || tree_header[0] != "trees")
      throw std::runtime_error("model io: expected trees");
    model.trees = read_trees(std::stoull(tree_header[1]));
    model.class_count = envelope.class_count;
    model.class_names = envelope.class_names;
    for (const auto& col : envelope.schema) model.schema.push_back(col.type);
  } else if (envelope.algorithm == "cart") {
    const std::vector<std::string> tree_header = tokens_of(reader.next());
    if (tree_header.size() != 2 || tree_header[0] != "trees" || tree_header[1] != "1")
      throw std::runtime_error("model io: expected single tree");
    envelope.cart = read_tree(reader, envelope.class_count, envelope.schema);
  } else {
    throw std::runtime_error("model io: unknown algorithm '" + envelope.algorithm + "'");
  }

  if (reader.next() != "end") throw std::runtime_error("model io: missing end marker");
  return envelope;
}

Dataset read_features(const std::string& path, const std::vector<SchemaColumn>& schema) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_features: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_features: empty file '" + path + "'");

  std::vector<std::string> header;
  {
    std::string cell;
    for (char ch : line) {
      if (ch == ',') {
        header.push_back(cell);
        cell.clear();
      } else if (ch != '\r') {
        cell.push_back(ch);
      }
    }
    header.push_back(cell);
  }

  std::vector<int> column_of(schema.size(), -1);
  for (std::size_t s = 0; s < schema.size(); ++s) {
    for (std::size_t j = 0; j < header.size(); ++j)
      if (header[j] == schema[s].name) column_of[s] = static_cast<int>(j);
    if (column_of[s] < 0)
      throw std::runtime_error("read_features: column '" + schema[s].name + "' missing");
  }

  Dataset data;
  data.class_count = 2;  // placeholder; prediction input carries no labels
  data.class_names = {"0", "1"};
  for (const auto& col : schema) {
    FeatureColumn feature;
    feature.name = col.name;
    feature.type = col.type;
    feature.categories = col.categories;
    data.features.push_back(std::move(feature));
  }

  std::vector<std::unordered_map<std::string, int>> code_maps(schema.size());
  for (std::size_t s = 0; s < schema.size(); ++s)
    for (std::size_t code = 0; code < schema[s].categories.size(); ++code)
      code_maps[s][schema[s].categories[code]] = static_cast<int>(code);

  std::size_t row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
      if (ch == ',') {
        cells.push_back(cell);
        cell.clear();
      } else if (ch != '\r') {
        cell.push_back(ch);
      }
    }
    cells.push_back(cell);
    if (cells.size() != header.size())
      throw std::runtime_error("read_features: row " + std::to_string(row_number) +
                               " has wrong column count");

    for (std::size_t s = 0; s < schema.size(); ++s) {
      const std::string& text = cells[column_of[s]];
      if (text.empty())
        throw std::runtime_error("read_features: missing value at row " +
                                 std::to_string(row_number) + ", column '" + schema[s].name + "'");
      auto& feature = data.features[s];
      if (schema[s].type == FeatureType::numeric) {
        feature.values.push_back(parse_double(text));
      } else {
        auto [it, inserted] =
            code_maps[s].emplace(text, static_cast<int>(feature.categories.size()));
        if (inserted) feature.categories.push_back(text);
        feature.values.push_back(static_cast<double>(it->second));
      }
    }
    data.labels.push_back(0);
  }
  return data;
}

ScoreMatrix envelope_predict(const ModelEnvelope& envelope, const Dataset& data) {
  if (envelope.algorithm == "kfhe-e" || envelope.algorithm == "kfhe-l")
    return kfhe_predict(envelope.kfhe, data);
  if (envelope.algorithm == "adaboost") return samme_predict(envelope.samme, data);
  if (envelope.algorithm == "bagging") return bagging_predict(envelope.bagging, data);
  if (envelope.algorithm == "cart") return predict_scores(envelope.cart, data);
  throw std::runtime_error("envelope_predict: unknown algorithm '" + envelope.algorithm + "'");
}

}  // namespace kfhe
