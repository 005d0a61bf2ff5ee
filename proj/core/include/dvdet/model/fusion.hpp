// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "dvdet/nn/ops.hpp"
#include "dvdet/nn/param_store.hpp"

namespace dvdet::model {

// Classifier over the concatenated view vectors:
//   p = softmax(W (x_graph || h_seq) + b).
// In single-view runs the absent side arrives as a zero vector of its
// configured width, keeping W's shape mode-independent.
class FusionHead {
 public:
  FusionHead() = default;
  FusionHead(std::string prefix, size_t graph_dim, size_t seq_dim, size_t num_classes);

  void init_params(nn::ParamStore& store, const nn::CounterRng& rng) const;

  struct Cache {
    std::vector<nn::Real> input;  // x_graph || h_seq
    std::vector<nn::Real> probs;
  };

  std::vector<nn::Real> predict(std::span<const nn::Real> x_graph,
                                std::span<const nn::Real> h_seq, const nn::ParamStore& store,
                                Cache* cache = nullptr) const;

  struct InputGrads {
    std::vector<nn::Real> d_graph;
    std::vector<nn::Real> d_seq;
  };

  // Takes dL/d logits (for cross-entropy over softmax: probs - one_hot).
  InputGrads backward(const Cache& cache, std::span<const nn::Real> d_logits,
                      nn::ParamStore& store) const;

  size_t graph_dim() const { return graph_dim_; }
  size_t seq_dim() const { return seq_dim_; }
  size_t num_classes() const { return classes_; }
  const std::string& weight_name() const { return w_name_; }
  const std::string& bias_name() const { return b_name_; }

 private:
  std::string w_name_, b_name_;
  size_t graph_dim_ = 0, seq_dim_ = 0, classes_ = 0;
};

}  // namespace dvdet::model
