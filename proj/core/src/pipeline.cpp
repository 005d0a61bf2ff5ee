// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dvdet/embedding.hpp"
#include "dvdet/evm/disasm.hpp"
#include "dvdet/hex.hpp"

namespace dvdet {

SampleLoader::SampleLoader(const config::RunConfig& config) : config_(config) {
  rules_ = config.rules_path.empty() ? ast::VulnRuleSet::reentrancy_defaults()
                                     : ast::VulnRuleSet::from_json_file(config.rules_path);
  retention_ = config.retention_path.empty()
                   ? ast::RetentionTable::defaults()
                   : ast::RetentionTable::from_json_file(config.retention_path);
  if (!config.embeddings_path.empty()) {
    external_embeddings_ = load_external_embeddings(config.embeddings_path);
  }
}

std::string SampleLoader::read_text(const std::filesystem::path& path, const char* stage) {
  std::ifstream is(path);
  if (!is) throw StageError(stage, "file not found: " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<uint8_t> SampleLoader::read_bytecode(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw StageError("disasm", "file not found: " + path.string());
  std::string raw((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (path.extension() == ".bin") {
    return std::vector<uint8_t>(raw.begin(), raw.end());
  }
  try {
    return parse_hex(raw);
  } catch (const FormatError& e) {
    throw StageError("disasm", path.string() + ": " + e.what());
  }
}

train::Sample SampleLoader::load(const ContractInputs& inputs,
                                 const std::optional<train::LabelMap>& labels) const {
  train::Sample sample;
  sample.id = inputs.id;
  sample.label_source = inputs.label_source;
  if (labels && !inputs.label.empty()) {
    sample.label = labels->index_of(inputs.label);
  }

  if (!inputs.ast_path.empty()) {
    const std::string text = read_text(inputs.ast_path, "parse_ast");
    ast::Ast tree;
    try {
      tree = ast::parse_ast(text);
    } catch (const FormatError& e) {
      throw StageError("parse_ast", inputs.ast_path + ": " + e.what());
    }
    ast::filter_ast(tree, retention_);
    const size_t dim = config_.model.graph_in;
    const auto& external = external_embeddings_;
    ast::NodeEmbedder embedder = [dim, &external](const ast::AstNode& node) {
      if (!external.empty()) {
        auto it = external.find(node.id);
        if (it != external.end()) return it->second;
      }
      return embed_node(node, dim);
    };
    try {
      sample.graph = ast::build_weighted_graph(tree, rules_, embedder,
                                               {.sibling_edges = config_.sibling_edges});
    } catch (const std::exception& e) {
      throw StageError("graph", inputs.ast_path + ": " + e.what());
    }
  }

  if (!inputs.bytecode_path.empty()) {
    std::vector<uint8_t> code = read_bytecode(inputs.bytecode_path);
    std::span<const uint8_t> body(code);
    if (config_.strip_metadata) body = evm::strip_metadata(body);
    const evm::Disassembly disasm = evm::disassemble(body);
    evm::ControlFlowGraph cfg = evm::build_cfg(disasm.instructions);
    cfg = evm::eliminate_dead_blocks(cfg);
    sample.paths = evm::extract_paths(
        cfg, {.max_paths = config_.max_paths, .max_blocks_per_path = config_.max_blocks_per_path});
    // A contract with code always yields at least the entry path; make the
    // degenerate empty-code case explicit instead of feeding zero paths in.
    sample.paths.erase(std::remove_if(sample.paths.begin(), sample.paths.end(),
                                      [](const evm::ControlFlowPath& p) {
                                        return p.opcodes.empty();
                                      }),
                       sample.paths.end());
    if (sample.paths.empty()) {
      throw StageError("paths", inputs.bytecode_path + ": no non-empty control-flow paths");
    }
  }

  if (!sample.graph && sample.paths.empty()) {
    throw StageError("input", inputs.id + ": neither view present");
  }
  return sample;
}

Prediction detect(const train::Sample& sample, const model::Detector& detector,
                  const std::string& task) {
  model::SampleOutput out = detector.predict(sample);
  Prediction p;
  p.id = sample.id;
  p.task = task;
  p.classes = detector.class_names();
  p.probabilities.assign(out.probs.begin(), out.probs.end());
  const size_t arg =
      std::max_element(out.probs.begin(), out.probs.end()) - out.probs.begin();
  p.label = p.classes[arg];
  p.graph_norm = nn::l2_norm(out.graph_vec);
  p.seq_norm = nn::l2_norm(out.seq_vec);
  return p;
}

std::string Prediction::to_json() const {
  nlohmann::json j{{"id", id},
                   {"task", task},
                   {"classes", classes},
                   {"probabilities", probabilities},
                   {"label", label},
                   {"graph_norm", graph_norm},
                   {"seq_norm", seq_norm}};
  return j.dump() + "\n";
}

}  // namespace dvdet
