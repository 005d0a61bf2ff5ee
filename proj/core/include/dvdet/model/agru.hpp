// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "dvdet/nn/ops.hpp"
#include "dvdet/nn/param_store.hpp"

namespace dvdet::model {

// Gate weights operate on the concatenation [h_prev, x]:
//   z = sigmoid(Wz [h,x] + bz)   r = sigmoid(Wr [h,x] + br)
//   h~ = tanh(Wh [r*h, x] + bh)  h' = (1-z)*h + z*h~
class GruLayer {
 public:
  GruLayer() = default;
  GruLayer(std::string name, size_t in_dim, size_t hidden_dim);

  void init_params(nn::ParamStore& store, const nn::CounterRng& rng) const;

  struct StepCache {
    std::vector<nn::Real> concat;    // [h_prev, x]
    std::vector<nn::Real> z, r, h_tilde;
    std::vector<nn::Real> h_prev;
  };

  std::vector<nn::Real> cell(std::span<const nn::Real> x, std::span<const nn::Real> h_prev,
                             const nn::ParamStore& store, StepCache* cache = nullptr) const;

  struct Cache {
    std::vector<StepCache> steps;
    nn::Tensor input;  // original sequence, len x in_dim
  };

  // Runs the recurrence from h_0 = 0; returns all hidden states (len x hidden).
  nn::Tensor forward(const nn::Tensor& sequence, const nn::ParamStore& store,
                     Cache* cache = nullptr) const;

  // BPTT. d_hidden holds dL/dh_t for every step; returns dL/d input sequence
  // and accumulates parameter gradients.
  nn::Tensor backward(const Cache& cache, const nn::Tensor& d_hidden,
                      nn::ParamStore& store) const;

  size_t hidden_dim() const { return hidden_; }
  size_t in_dim() const { return in_; }
  std::vector<std::string> param_names() const;

 private:
  std::string name_;
  size_t in_ = 0, hidden_ = 0;

  std::string wz_, wr_, wh_, bz_, br_, bh_;
};

// Attention pooling over hidden states:
//   a = softmax_t(u . h_t),  pooled = sum_t a_t h_t.
class AttentionPool {
 public:
  AttentionPool() = default;
  AttentionPool(std::string name, size_t dim);

  void init_params(nn::ParamStore& store, const nn::CounterRng& rng) const;

  struct Cache {
    std::vector<nn::Real> attention;
  };

  std::vector<nn::Real> forward(const nn::Tensor& hidden, const nn::ParamStore& store,
                                Cache* cache = nullptr) const;

  // Returns dL/d hidden; accumulates du.
  nn::Tensor backward(const nn::Tensor& hidden, const Cache& cache,
                      std::span<const nn::Real> d_out, nn::ParamStore& store) const;

  const std::string& param_name() const { return u_name_; }

 private:
  std::string u_name_;
  size_t dim_ = 0;
};

// Two stacked GRU layers with dropout in between, attention-pooled.
class AgruEncoder {
 public:
  AgruEncoder() = default;
  AgruEncoder(const std::string& prefix, size_t in_dim, size_t hidden_dim, double dropout);

  void init_params(nn::ParamStore& store, const nn::CounterRng& rng) const;

  struct Cache {
    GruLayer::Cache l0, l1;
    nn::Tensor mask;
    nn::Tensor h1;
    AttentionPool::Cache pool;
  };

  std::vector<nn::Real> forward(const nn::Tensor& sequence, const nn::ParamStore& store,
                                bool training, const nn::CounterRng& rng, uint64_t noise_scope,
                                Cache* cache = nullptr) const;

  // Returns dL/d input sequence.
  nn::Tensor backward(const Cache& cache, std::span<const nn::Real> d_out,
                      nn::ParamStore& store) const;

  size_t out_dim() const { return hidden_; }
  const GruLayer& layer0() const { return l0_; }
  const GruLayer& layer1() const { return l1_; }
  const AttentionPool& pool() const { return pool_; }

 private:
  GruLayer l0_, l1_;
  AttentionPool pool_;
  double dropout_ = 0.5;
  std::string prefix_;
  size_t hidden_ = 0;
};

enum class PathPool { Mean, Max };

// Combines per-path vectors into one contract vector. Mean by default; Max
// kept behind the config switch.
std::vector<nn::Real> pool_paths(const std::vector<std::vector<nn::Real>>& vectors,
                                 PathPool mode = PathPool::Mean);

}  // namespace dvdet::model
