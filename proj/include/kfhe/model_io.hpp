#pragma once

#include <string>
#include <vector>

#include "kfhe/baselines.hpp"
#include "kfhe/cart.hpp"
#include "kfhe/dataset.hpp"
#include "kfhe/kfhe.hpp"

namespace kfhe {

// Feature metadata captured at training time so a saved model can map a new
// CSV's symbols onto the codes its trees were fit with.
struct SchemaColumn {
  std::string name;
  FeatureType type = FeatureType::numeric;
  std::vector<std::string> categories;
};

// One serialization envelope for every algorithm, distinguished by tag.
// The text format is versioned and self-describing; doubles are written in
// shortest round-trip form, so a reloaded model replays bit-exactly.
struct ModelEnvelope {
  std::string algorithm;  // kfhe-e | kfhe-l | adaboost | bagging | cart
  int class_count = 0;
  std::vector<std::string> class_names;
  std::vector<SchemaColumn> schema;

  KfheModel kfhe;
  SammeModel samme;
  BaggingModel bagging;
  TreeModel cart;
};

std::vector<SchemaColumn> capture_schema(const Dataset& dataset);

void save_model(const ModelEnvelope& envelope, const std::string& path);
ModelEnvelope load_model(const std::string& path);

// Reads feature columns named in `schema` from a CSV (extra columns such as
// the label are ignored), remapping categorical symbols to the stored codes.
// Symbols unseen at training time get fresh codes past the stored table, so
// they route through each node's default child. May return zero rows.
Dataset read_features(const std::string& path, const std::vector<SchemaColumn>& schema);

// Prediction scores for whichever model the envelope holds.
ScoreMatrix envelope_predict(const ModelEnvelope& envelope, const Dataset& data);

}  // namespace kfhe
