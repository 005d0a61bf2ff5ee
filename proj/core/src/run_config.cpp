// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/config/run_config.hpp"

#include "dvdet/errors.hpp"

namespace dvdet::config {

void RunConfig::apply(const TomlTable& table) {
  for (const auto& [key, value] : table) {
    if (key == "seed") seed = static_cast<uint64_t>(value.as_int());
    else if (key == "mode") mode = value.as_string();
    else if (key == "task") task = value.as_string();
    else if (key == "epochs") epochs = static_cast<int>(value.as_int());
    else if (key == "batch") batch = static_cast<int>(value.as_int());
    else if (key == "lr0") lr0 = value.as_float();
    else if (key == "kfold") kfold = static_cast<int>(value.as_int());
    else if (key == "dropout") model.dropout = value.as_float();
    else if (key == "classes") {
      classes.clear();
      for (const TomlValue& v : value.as_array()) classes.push_back(v.as_string());
    } else if (key == "rules") rules_path = value.as_string();
    else if (key == "retention") retention_path = value.as_string();
    else if (key == "embeddings") embeddings_path = value.as_string();
    else if (key == "paths.max_paths") max_paths = static_cast<size_t>(value.as_int());
    else if (key == "paths.max_blocks") max_blocks_per_path = static_cast<size_t>(value.as_int());
    else if (key == "paths.strip_metadata") strip_metadata = value.as_bool();
    else if (key == "model.graph_in") model.graph_in = static_cast<size_t>(value.as_int());
    else if (key == "model.seq_in") model.seq_in = static_cast<size_t>(value.as_int());
    else if (key == "model.egat_hidden") {
      model.egat_hidden.clear();
      for (const TomlValue& v : value.as_array()) {
        model.egat_hidden.push_back(static_cast<size_t>(v.as_int()));
      }
    } else if (key == "model.egat_out") model.egat_out = static_cast<size_t>(value.as_int());
    else if (key == "model.gru_hidden") model.gru_hidden = static_cast<size_t>(value.as_int());
    else if (key == "model.leaky_slope") model.leaky_slope = value.as_float();
    else if (key == "model.oov_buckets") model.oov_buckets = static_cast<size_t>(value.as_int());
    else if (key == "model.path_pool") {
      const std::string& p = value.as_string();
      if (p == "mean") model.path_pool = model::PathPool::Mean;
      else if (p == "max") model.path_pool = model::PathPool::Max;
      else throw FormatError("model.path_pool must be 'mean' or 'max'");
    } else if (key == "model.sibling_edges") sibling_edges = value.as_bool();
    else throw FormatError("unknown config key: " + key);
  }
}

std::vector<std::string> RunConfig::effective_classes() const {
  if (!classes.empty()) return classes;
  return task_kind() == train::TaskKind::Existence ? train::LabelMap::default_existence_classes()
                                                   : train::LabelMap::default_type_classes();
}

train::TrainConfig RunConfig::train_config() const {
  train::TrainConfig tc;
  tc.epochs = epochs;
  tc.batch = batch;
  tc.lr0 = lr0;
  tc.seed = seed;
  return tc;
}

}  // namespace dvdet::config
