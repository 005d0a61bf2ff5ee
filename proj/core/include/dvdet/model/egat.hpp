// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "dvdet/ast/code_graph.hpp"
#include "dvdet/nn/ops.hpp"
#include "dvdet/nn/param_store.hpp"

namespace dvdet::model {

// Neighborhood view used by the attention layers: undirected adjacency with
// the edge importance on every arc plus a self-loop carrying the node's own
// tier value (softmax over an empty neighborhood would be undefined).
struct GraphView {
  size_t n = 0;
  // neighbors[i] = (j, S_ij), sorted by j; includes (i, S_ii).
  std::vector<std::vector<std::pair<size_t, double>>> neighbors;

  static GraphView from(const ast::WeightedCodeGraph& graph);
};

// Single-head edge-aware attention layer:
//   e_ij = LeakyReLU(a^T (W x_i + W x_j) * S_ij)
//   y_i  = ELU(sum_j softmax_j(e_ij) W x_j),  j over N_i and i itself.
// With every S_ij = 1 this is exactly a plain additive-logit GAT layer.
class EgatLayer {
 public:
  EgatLayer() = default;
  EgatLayer(std::string name, size_t in_dim, size_t out_dim, double leaky_slope = 0.2);

  void init_params(nn::ParamStore& store, const nn::CounterRng& rng) const;

  struct Cache {
    nn::Tensor h;                                 // X W, n x out
    std::vector<nn::Real> q;                      // a . h_i
    std::vector<std::vector<nn::Real>> logits;    // pre-LeakyReLU, per edge
    std::vector<std::vector<nn::Real>> attention; // softmax rows
    nn::Tensor pre_activation;                    // n x out, before ELU
  };

  nn::Tensor forward(const GraphView& view, const nn::Tensor& x, const nn::ParamStore& store,
                     Cache* cache = nullptr) const;

  // Accumulates dW and da into the store; returns dX.
  nn::Tensor backward(const GraphView& view, const nn::Tensor& x, const Cache& cache,
                      const nn::Tensor& dy, nn::ParamStore& store) const;

  const std::string& weight_name() const { return w_name_; }
  const std::string& attention_name() const { return a_name_; }
  size_t in_dim() const { return in_dim_; }
  size_t out_dim() const { return out_dim_; }

 private:
  std::string w_name_, a_name_;
  size_t in_dim_ = 0, out_dim_ = 0;
  double leaky_slope_ = 0.2;
};

// Three attention layers with dropout between them (training mode only).
class EgatEncoder {
 public:
  EgatEncoder() = default;
  EgatEncoder(const std::string& prefix, size_t in_dim, const std::vector<size_t>& hidden,
              size_t out_dim, double dropout, double leaky_slope);

  void init_params(nn::ParamStore& store, const nn::CounterRng& rng) const;

  struct Cache {
    std::vector<EgatLayer::Cache> layers;
    std::vector<nn::Tensor> inputs;  // input of each layer
    std::vector<nn::Tensor> masks;   // dropout masks between layers
  };

  nn::Tensor forward(const GraphView& view, const nn::Tensor& x, const nn::ParamStore& store,
                     bool training, const nn::CounterRng& rng, uint64_t noise_scope,
                     Cache* cache = nullptr) const;

  nn::Tensor backward(const GraphView& view, const Cache& cache, const nn::Tensor& dy,
                      nn::ParamStore& store) const;

  const std::vector<EgatLayer>& layers() const { return layers_; }
  size_t out_dim() const { return layers_.back().out_dim(); }

 private:
  std::vector<EgatLayer> layers_;
  double dropout_ = 0.5;
  std::string prefix_;
};

// Graph-level readout: mean over node rows. Domain error on an empty matrix.
std::vector<nn::Real> graph_readout(const nn::Tensor& node_matrix);

}  // namespace dvdet::model
