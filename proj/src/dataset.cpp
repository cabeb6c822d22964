#include "kfhe/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "kfhe/rng.hpp"

namespace kfhe {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
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
  for (auto& c : cells) {
    auto begin = c.find_first_not_of(" \t");
    auto end = c.find_last_not_of(" \t");
    c = (begin == std::string::npos) ? std::string() : c.substr(begin, end - begin + 1);
  }
  return cells;
}

bool parse_real(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

Dataset Dataset::take_rows(std::span<const std::size_t> rows) const {
  Dataset out;
  out.class_names = class_names;
  out.class_count = class_count;
  out.features.reserve(features.size());
  for (const auto& col : features) {
    FeatureColumn sub;
    sub.name = col.name;
    sub.type = col.type;
    sub.categories = col.categories;
    sub.values.reserve(rows.size());
    for (std::size_t r : rows) sub.values.push_back(col.values[r]);
    out.features.push_back(std::move(sub));
  }
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) out.labels.push_back(labels[r]);
  return out;
}

void Dataset::validate() const {
  if (labels.empty()) throw std::runtime_error("dataset: no rows");
  if (features.empty()) throw std::runtime_error("dataset: no feature columns");
  if (class_count < 2) throw std::runtime_error("dataset: class_count must be >= 2");
  for (const auto& col : features) {
    if (col.values.size() != labels.size())
      throw std::runtime_error("dataset: column '" + col.name + "' length mismatch");
  }
  for (int label : labels) {
    if (label < 0 || label >= class_count)
      throw std::runtime_error("dataset: label out of range");
  }
}

void SampleWeights::validate() const {
  bool any_positive = false;
  for (double w : values) {
    if (!(w >= 0.0)) throw std::runtime_error("sample weights: negative or NaN entry");
    if (w > 0.0) any_positive = true;
  }
  if (!any_positive) throw std::runtime_error("sample weights: all entries are zero");
}

SampleWeights SampleWeights::uniform(std::size_t n) {
  return SampleWeights{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

std::vector<std::size_t> FoldPlan::fold_rows(std::size_t repeat, int fold) const {
  std::vector<std::size_t> rows;
  const auto& a = assignments[repeat];
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] == fold) rows.push_back(i);
  return rows;
}

std::vector<std::size_t> FoldPlan::complement_rows(std::size_t repeat, int fold) const {
  std::vector<std::size_t> rows;
  const auto& a = assignments[repeat];
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != fold) rows.push_back(i);
  return rows;
}

Dataset load_csv(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_csv: empty file '" + path + "'");
  const std::vector<std::string> header = split_csv_line(line);
  const std::size_t column_count = header.size();
  if (column_count < 2) throw std::runtime_error("load_csv: need at least two columns");

  std::size_t label_index = column_count - 1;
  if (!options.label_column.empty()) {
    auto it = std::find(header.begin(), header.end(), options.label_column);
    if (it == header.end())
      throw std::runtime_error("load_csv: label column '" + options.label_column + "' not found");
    label_index = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<std::vector<std::string>> cells_by_column(column_count);
  std::size_t row_number = 1;  // header was row 1
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != column_count)
      throw std::runtime_error("load_csv: row " + std::to_string(row_number) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(column_count));
    for (std::size_t j = 0; j < column_count; ++j) {
      if (cells[j].empty())
        throw std::runtime_error("load_csv: missing value at row " + std::to_string(row_number) +
                                 ", column '" + header[j] + "'");
      cells_by_column[j].push_back(std::move(cells[j]));
    }
  }
  const std::size_t n = cells_by_column[0].size();
  if (n == 0) throw std::runtime_error("load_csv: no data rows in '" + path + "'");

  Dataset dataset;
  for (std::size_t j = 0; j < column_count; ++j) {
    if (j == label_index) continue;

    std::optional<FeatureType> forced;
    for (const auto& [name, type] : options.type_overrides)
      if (name == header[j]) forced = type;

    FeatureColumn col;
    col.name = header[j];

    std::vector<double> numeric(n);
    bool all_numeric = true;
    for (std::size_t i = 0; i < n && all_numeric; ++i)
      all_numeric = parse_real(cells_by_column[j][i], numeric[i]);

    if (forced == FeatureType::numeric && !all_numeric) {
      for (std::size_t i = 0; i < n; ++i) {
        double value;
        if (!parse_real(cells_by_column[j][i], value))
          throw std::runtime_error("load_csv: unparseable numeric cell at row " +
                                   std::to_string(i + 2) + ", column '" + header[j] + "'");
      }
    }

    if (all_numeric && forced != FeatureType::categorical) {
      col.type = FeatureType::numeric;
      col.values = std::move(numeric);
    } else {
      col.type = FeatureType::categorical;
      std::unordered_map<std::string, int> codes;
      col.values.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::string& symbol = cells_by_column[j][i];
        auto [it, inserted] = codes.emplace(symbol, static_cast<int>(col.categories.size()));
        if (inserted) col.categories.push_back(symbol);
        col.values.push_back(static_cast<double>(it->second));
      }
    }
    dataset.features.push_back(std::move(col));
  }

  std::unordered_map<std::string, int> label_codes;
  dataset.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& text = cells_by_column[label_index][i];
    auto [it, inserted] = label_codes.emplace(text, static_cast<int>(dataset.class_names.size()));
    if (inserted) dataset.class_names.push_back(text);
    dataset.labels.push_back(it->second);
  }
  dataset.class_count = static_cast<int>(dataset.class_names.size());
  if (dataset.class_count < 2)
    throw std::runtime_error("load_csv: fewer than 2 distinct labels in '" + path + "'");

  dataset.validate();
  return dataset;
}

FoldPlan stratified_kfold(const Dataset& dataset, std::size_t k, std::size_t repeats,
                          std::uint64_t seed) {
  const std::size_t n = dataset.size();
  if (k < 2) throw std::invalid_argument("stratified_kfold: k must be >= 2");
  if (k > n) throw std::invalid_argument("stratified_kfold: k exceeds dataset size");
  if (repeats < 1) throw std::invalid_argument("stratified_kfold: repeats must be >= 1");

  std::vector<std::vector<std::size_t>> by_class(dataset.class_count);
  for (std::size_t i = 0; i < n; ++i) by_class[dataset.labels[i]].push_back(i);

  FoldPlan plan;
  plan.repeat_count = repeats;
  plan.fold_count = k;
  plan.assignments.assign(repeats, std::vector<int>(n, -1));

  const Rng root(seed);
  for (std::size_t r = 0; r < repeats; ++r) {
    Rng rng = root.derive(r);
    auto& assignment = plan.assignments[r];
    for (const auto& members : by_class) {
      if (members.empty()) continue;
      std::vector<std::size_t> shuffled = members;
      for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
      const std::size_t offset = rng.next_below(k);
      for (std::size_t j = 0; j < shuffled.size(); ++j)
        assignment[shuffled[j]] = static_cast<int>((offset + j) % k);
    }
  }
  return plan;
}

Dataset weighted_resample(const Dataset& dataset, const SampleWeights& weights,
                          std::uint64_t seed) {
  const std::size_t n = dataset.size();
  if (weights.values.size() != n)
    throw std::invalid_argument("weighted_resample: weights length mismatch");
  weights.validate();

  std::vector<double> cumulative(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += weights.values[i];
    cumulative[i] = total;
  }

  Rng rng(seed);
  std::vector<std::size_t> rows(n);
  for (std::size_t draw = 0; draw < n; ++draw) {
    const double u = rng.next_double() * total;
    // Smallest index with cumulative[i] > u; zero-weight entries have empty
    // intervals and can never be selected.
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    rows[draw] = static_cast<std::size_t>(it - cumulative.begin());
  }
  return dataset.take_rows(rows);
}

NoisyDataset inject_label_noise(const Dataset& dataset, double fraction, std::uint64_t seed) {
  if (dataset.class_count < 2)
    throw std::invalid_argument("inject_label_noise: need at least 2 classes");
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("inject_label_noise: fraction must be in [0,1]");

  const std::size_t n = dataset.size();
  // Round half up.
  const auto change_count =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));

  NoisyDataset result;
  result.data = dataset;
  if (change_count == 0) return result;

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < change_count; ++i)
    std::swap(order[i], order[i + rng.next_below(n - i)]);
  order.resize(change_count);
  std::sort(order.begin(), order.end());

  for (std::size_t row : order) {
    const int old_label = dataset.labels[row];
    const int draw = static_cast<int>(rng.next_below(static_cast<std::size_t>(dataset.class_count - 1)));
    result.data.labels[row] = draw + (draw >= old_label ? 1 : 0);
  }
  result.changed = std::move(order);
  return result;
}

}  // namespace kfhe
