// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dvdet/ast/code_graph.hpp"
#include "dvdet/evm/cfg.hpp"

namespace dvdet::train {

// One contract, fully featurized. Ablation modes may leave a view empty,
// but at least one must be present.
struct Sample {
  std::string id;
  std::optional<ast::WeightedCodeGraph> graph;
  std::vector<evm::ControlFlowPath> paths;
  int label = -1;  // class index; -1 when unlabeled (detect)
  std::string label_source;
};

// One JSON object per line:
//   {id, ast_path, bytecode_path, label, label_source, solc_version}
struct ManifestEntry {
  std::string id;
  std::string ast_path;
  std::string bytecode_path;
  std::string label;
  std::string label_source;
  std::string solc_version;
};

// Relative paths in entries stay relative; callers resolve them against the
// manifest's directory.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

enum class TaskKind { Existence, Type };

std::string_view to_string(TaskKind task);
TaskKind task_from_string(std::string_view name);

// Maps manifest label strings to class indices. The type task requires the
// label to be a configured class name; the existence task maps the safe
// class to 0 and anything else to 1.
class LabelMap {
 public:
  LabelMap(TaskKind task, std::vector<std::string> classes);

  int index_of(const std::string& label) const;  // FormatError on unknown type label
  const std::vector<std::string>& classes() const { return classes_; }
  size_t num_classes() const { return classes_.size(); }
  TaskKind task() const { return task_; }

  static std::vector<std::string> default_existence_classes();
  static std::vector<std::string> default_type_classes();

 private:
  TaskKind task_;
  std::vector<std::string> classes_;
};

}  // namespace dvdet::train
