// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/model/fusion.hpp"

#include "dvdet/errors.hpp"

namespace dvdet::model {

using nn::Real;

FusionHead::FusionHead(std::string prefix, size_t graph_dim, size_t seq_dim, size_t num_classes)
    : w_name_(prefix + ".W"), b_name_(prefix + ".b"), graph_dim_(graph_dim), seq_dim_(seq_dim),
      classes_(num_classes) {}

void FusionHead::init_params(nn::ParamStore& store, const nn::CounterRng& rng) const {
  store.create_glorot(w_name_, {classes_, graph_dim_ + seq_dim_}, rng);
  store.create(b_name_, {classes_});
}

std::vector<Real> FusionHead::predict(std::span<const Real> x_graph, std::span<const Real> h_seq,
                                      const nn::ParamStore& store, Cache* cache) const {
  if (x_graph.size() != graph_dim_ || h_seq.size() != seq_dim_) {
    throw InvariantError("fusion: view dims " + std::to_string(x_graph.size()) + "+" +
                         std::to_string(h_seq.size()) + " do not match " +
                         std::to_string(graph_dim_) + "+" + std::to_string(seq_dim_));
  }
  const nn::Tensor& w = store.value(w_name_);
  const nn::Tensor& b = store.value(b_name_);

  std::vector<Real> input(graph_dim_ + seq_dim_);
  std::copy(x_graph.begin(), x_graph.end(), input.begin());
  std::copy(h_seq.begin(), h_seq.end(), input.begin() + graph_dim_);

  std::vector<Real> logits(classes_);
  nn::gemv(w.data(), input.data(), logits.data(), classes_, input.size());
  for (size_t c = 0; c < classes_; ++c) logits[c] += b[c];
  std::vector<Real> probs = nn::softmax(logits);

  if (cache) {
    cache->input = std::move(input);
    cache->probs = probs;
  }
  return probs;
}

FusionHead::InputGrads FusionHead::backward(const Cache& cache, std::span<const Real> d_logits,
                                            nn::ParamStore& store) const {
  const nn::Tensor& w = store.value(w_name_);
  nn::Tensor& dw = store.grad(w_name_);
  nn::Tensor& db = store.grad(b_name_);
  const size_t in_dim = graph_dim_ + seq_dim_;

  nn::ger(dw.data(), d_logits.data(), cache.input.data(), classes_, in_dim);
  for (size_t c = 0; c < classes_; ++c) db[c] += d_logits[c];

  std::vector<Real> d_input(in_dim);
  nn::gemv_t(w.data(), d_logits.data(), d_input.data(), classes_, in_dim);

  InputGrads grads;
  grads.d_graph.assign(d_input.begin(), d_input.begin() + graph_dim_);
  grads.d_seq.assign(d_input.begin() + graph_dim_, d_input.end());
  return grads;
}

}  // namespace dvdet::model
