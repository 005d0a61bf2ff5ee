// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "dvdet/embedding.hpp"
#include "dvdet/model/agru.hpp"
#include "dvdet/model/egat.hpp"
#include "dvdet/model/fusion.hpp"
#include "dvdet/nn/param_store.hpp"
#include "dvdet/train/dataset.hpp"

namespace dvdet::model {

enum class ViewMode { Dual, SourceOnly, BytecodeOnly };
std::string_view to_string(ViewMode mode);
ViewMode view_mode_from_string(std::string_view name);

struct ModelConfig {
  size_t graph_in = 768;
  std::vector<size_t> egat_hidden = {256, 256};
  size_t egat_out = 128;
  size_t seq_in = 350;
  size_t gru_hidden = 256;
  size_t num_classes = 2;
  double dropout = 0.5;
  double leaky_slope = 0.2;
  PathPool path_pool = PathPool::Mean;
  size_t oov_buckets = 8;

  std::string to_json() const;
  static ModelConfig from_json(const std::string& text);
};

struct SampleOutput {
  std::vector<nn::Real> probs;
  std::vector<nn::Real> graph_vec;  // zero vector when the view is absent
  std::vector<nn::Real> seq_vec;
};

// The full dual-view model: one E-GAT encoder, one attention-GRU encoder,
// the trainable opcode embedding table and the fusion classifier, all
// parameterized through a single ParamStore.
class Detector {
 public:
  Detector(ModelConfig config, ViewMode mode, std::vector<std::string> class_names,
           uint64_t seed);

  // Eval-mode forward.
  SampleOutput predict(const train::Sample& sample) const;

  // Mean loss over the batch; accumulates gradients for one optimizer step.
  // noise_scope feeds the dropout streams and must change per step.
  nn::Real loss_and_gradients(std::span<const train::Sample* const> batch, uint64_t noise_scope);

  // Forward-only loss (eval mode), for validation curves.
  nn::Real loss(const train::Sample& sample) const;

  nn::ParamStore& params() { return store_; }
  const nn::ParamStore& params() const { return store_; }
  const ModelConfig& config() const { return config_; }
  ViewMode mode() const { return mode_; }
  const std::vector<std::string>& class_names() const { return class_names_; }
  uint64_t seed() const { return rng_.seed(); }

  // Config + mode + classes, embedded in checkpoints.
  std::string meta_json() const;
  static Detector from_meta_json(const std::string& meta);

  const EmbeddingTable& opcode_table() const { return table_; }

 private:
  struct ForwardCaches;
  SampleOutput forward(const train::Sample& sample, bool training, uint64_t noise_scope,
                       ForwardCaches* caches) const;

  ModelConfig config_;
  ViewMode mode_;
  std::vector<std::string> class_names_;
  nn::CounterRng rng_;
  nn::ParamStore store_;
  EmbeddingTable table_;
  EgatEncoder egat_;
  AgruEncoder agru_;
  FusionHead fusion_;
};

}  // namespace dvdet::model
