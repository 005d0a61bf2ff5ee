// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "dvdet/config/toml_lite.hpp"
#include "dvdet/model/detector.hpp"
#include "dvdet/train/trainer.hpp"

namespace dvdet::config {

// Everything a run needs, with defaults; TOML files override defaults and
// CLI flags override the file.
struct RunConfig {
  uint64_t seed = 0;
  std::string mode = "dual";
  std::string task = "existence";
  int epochs = 50;
  int batch = 32;
  double lr0 = 0.01;
  int kfold = 0;  // 0 = single split
  std::vector<std::string> classes;  // defaults depend on task when empty

  size_t max_paths = 32;
  size_t max_blocks_per_path = 256;
  bool strip_metadata = true;

  model::ModelConfig model;
  bool sibling_edges = false;

  std::string rules_path;      // empty = built-in reentrancy rules
  std::string retention_path;  // empty = built-in defaults
  std::string embeddings_path; // optional external node vectors

  void apply(const TomlTable& table);  // FormatError on unknown keys

  std::vector<std::string> effective_classes() const;
  model::ViewMode view_mode() const { return model::view_mode_from_string(mode); }
  train::TaskKind task_kind() const { return train::task_from_string(task); }
  train::TrainConfig train_config() const;
};

}  // namespace dvdet::config
