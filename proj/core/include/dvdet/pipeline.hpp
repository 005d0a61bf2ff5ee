// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "dvdet/config/run_config.hpp"
#include "dvdet/errors.hpp"
#include "dvdet/model/detector.hpp"
#include "dvdet/train/dataset.hpp"

namespace dvdet {

// Stage-tagged error: rendered by the CLI as "error: <stage>: <message>".
struct StageError : FormatError {
  StageError(const std::string& stage, const std::string& message)
      : FormatError(stage + ": " + message) {}
};

struct ContractInputs {
  std::string id;
  std::string ast_path;       // empty = no source view
  std::string bytecode_path;  // empty = no bytecode view
  std::string label;          // raw manifest label; empty = unlabeled
  std::string label_source;
};

class SampleLoader {
 public:
  explicit SampleLoader(const config::RunConfig& config);

  // parse -> filter -> classify -> weighted graph; disassemble -> cfg ->
  // dead-block elimination -> paths. Throws StageError naming the stage.
  train::Sample load(const ContractInputs& inputs,
                     const std::optional<train::LabelMap>& labels) const;

  // Reads hex for any extension but .bin, which is raw bytes.
  static std::vector<uint8_t> read_bytecode(const std::filesystem::path& path);
  static std::string read_text(const std::filesystem::path& path, const char* stage);

  const ast::VulnRuleSet& rules() const { return rules_; }
  const ast::RetentionTable& retention() const { return retention_; }

 private:
  const config::RunConfig& config_;
  ast::VulnRuleSet rules_;
  ast::RetentionTable retention_;
  std::map<int, std::vector<nn::Real>> external_embeddings_;
};

struct Prediction {
  std::string id;
  std::string task;
  std::vector<std::string> classes;
  std::vector<double> probabilities;
  std::string label;      // argmax class name
  double graph_norm = 0;  // per-view contribution norms, for audit
  double seq_norm = 0;

  std::string to_json() const;
};

Prediction detect(const train::Sample& sample, const model::Detector& detector,
                  const std::string& task);

}  // namespace dvdet
