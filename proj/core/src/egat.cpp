// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/model/egat.hpp"

#include <algorithm>
#include <stdexcept>

#include "dvdet/errors.hpp"

namespace dvdet::model {

using nn::Real;
using nn::Tensor;

GraphView GraphView::from(const ast::WeightedCodeGraph& graph) {
  GraphView view;
  view.n = graph.node_count();
  view.neighbors.resize(view.n);
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    const auto [u, v] = graph.edges[e];
    const double w = graph.edge_weights[e];
    view.neighbors[u].emplace_back(v, w);
    view.neighbors[v].emplace_back(u, w);
  }
  for (size_t i = 0; i < view.n; ++i) {
    view.neighbors[i].emplace_back(i, graph.node_tiers[i]);
    std::sort(view.neighbors[i].begin(), view.neighbors[i].end());
  }
  return view;
}

EgatLayer::EgatLayer(std::string name, size_t in_dim, size_t out_dim, double leaky_slope)
    : w_name_(name + ".W"), a_name_(name + ".a"), in_dim_(in_dim), out_dim_(out_dim),
      leaky_slope_(leaky_slope) {}

void EgatLayer::init_params(nn::ParamStore& store, const nn::CounterRng& rng) const {
  store.create_glorot(w_name_, {in_dim_, out_dim_}, rng);
  store.create_glorot(a_name_, {out_dim_}, rng);
}

Tensor EgatLayer::forward(const GraphView& view, const Tensor& x, const nn::ParamStore& store,
                          Cache* cache) const {
  if (x.shape().size() != 2 || x.cols() != in_dim_ || x.rows() != view.n) {
    throw InvariantError("egat layer: input is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.shape().size() == 2 ? x.cols() : 0) + ", expected " +
                         std::to_string(view.n) + "x" + std::to_string(in_dim_));
  }
  const Tensor& w = store.value(w_name_);
  const Tensor& a = store.value(a_name_);
  const size_t n = view.n;

  Tensor h({n, out_dim_});
  nn::gemm(x.data(), w.data(), h.data(), n, in_dim_, out_dim_);

  std::vector<Real> q(n);
  for (size_t i = 0; i < n; ++i) {
    q[i] = nn::dot({h.row(i), out_dim_}, {a.data(), out_dim_});
  }

  Tensor pre({n, out_dim_});
  std::vector<std::vector<Real>> logits(n), attention(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& nb = view.neighbors[i];
    std::vector<Real>& raw = logits[i];
    raw.resize(nb.size());
    std::vector<Real> act(nb.size());
    for (size_t k = 0; k < nb.size(); ++k) {
      raw[k] = (q[i] + q[nb[k].first]) * static_cast<Real>(nb[k].second);
      act[k] = nn::leaky_relu(raw[k], static_cast<Real>(leaky_slope_));
    }
    nn::softmax_inplace(act);
    Real* out_row = pre.row(i);
    for (size_t k = 0; k < nb.size(); ++k) {
      const Real* hj = h.row(nb[k].first);
      for (size_t d = 0; d < out_dim_; ++d) out_row[d] += act[k] * hj[d];
    }
    attention[i] = std::move(act);
  }

  Tensor y({n, out_dim_});
  for (size_t i = 0; i < n * out_dim_; ++i) y[i] = nn::elu(pre[i]);

  if (cache) {
    cache->h = std::move(h);
    cache->q = std::move(q);
    cache->logits = std::move(logits);
    cache->attention = std::move(attention);
    cache->pre_activation = std::move(pre);
  }
  return y;
}

Tensor EgatLayer::backward(const GraphView& view, const Tensor& x, const Cache& cache,
                           const Tensor& dy, nn::ParamStore& store) const {
  const Tensor& w = store.value(w_name_);
  const Tensor& a = store.value(a_name_);
  Tensor& dw = store.grad(w_name_);
  Tensor& da = store.grad(a_name_);
  const size_t n = view.n;

  Tensor dh({n, out_dim_});
  std::vector<Real> dq(n, Real(0));

  std::vector<Real> du(out_dim_);
  std::vector<Real> datt, dlogit;
  for (size_t i = 0; i < n; ++i) {
    const Real* dyi = dy.row(i);
    const Real* pre = cache.pre_activation.row(i);
    for (size_t d = 0; d < out_dim_; ++d) du[d] = dyi[d] * nn::elu_grad(pre[d]);

    const auto& nb = view.neighbors[i];
    const std::vector<Real>& att = cache.attention[i];
    datt.assign(nb.size(), Real(0));
    for (size_t k = 0; k < nb.size(); ++k) {
      const Real* hj = cache.h.row(nb[k].first);
      Real* dhj = dh.row(nb[k].first);
      Real acc = 0;
      for (size_t d = 0; d < out_dim_; ++d) {
        acc += du[d] * hj[d];
        dhj[d] += att[k] * du[d];
      }
      datt[k] = acc;
    }
    dlogit.resize(nb.size());
    nn::softmax_backward(att, datt, dlogit);
    for (size_t k = 0; k < nb.size(); ++k) {
      const Real g = dlogit[k] *
                     nn::leaky_relu_grad(cache.logits[i][k], static_cast<Real>(leaky_slope_)) *
                     static_cast<Real>(nb[k].second);
      dq[i] += g;
      dq[nb[k].first] += g;
    }
  }

  // q_j = a . h_j
  for (size_t j = 0; j < n; ++j) {
    if (dq[j] == Real(0)) continue;
    const Real* hj = cache.h.row(j);
    Real* dhj = dh.row(j);
    for (size_t d = 0; d < out_dim_; ++d) {
      da[d] += dq[j] * hj[d];
      dhj[d] += dq[j] * a[d];
    }
  }

  // h = x W
  Tensor dx({n, in_dim_});
  // dW += x^T dh ; dx = dh W^T
  for (size_t i = 0; i < n; ++i) {
    const Real* xi = x.row(i);
    const Real* dhi = dh.row(i);
    for (size_t p = 0; p < in_dim_; ++p) {
      if (xi[p] != Real(0)) {
        Real* dwrow = dw.row(p);
        for (size_t d = 0; d < out_dim_; ++d) dwrow[d] += xi[p] * dhi[d];
      }
    }
    Real* dxi = dx.row(i);
    for (size_t p = 0; p < in_dim_; ++p) {
      dxi[p] = nn::dot({dhi, out_dim_}, {w.row(p), out_dim_});
    }
  }
  return dx;
}

EgatEncoder::EgatEncoder(const std::string& prefix, size_t in_dim,
                         const std::vector<size_t>& hidden, size_t out_dim, double dropout,
                         double leaky_slope)
    : dropout_(dropout), prefix_(prefix) {
  size_t prev = in_dim;
  size_t index = 0;
  for (size_t h : hidden) {
    layers_.emplace_back(prefix + ".l" + std::to_string(index++), prev, h, leaky_slope);
    prev = h;
  }
  layers_.emplace_back(prefix + ".l" + std::to_string(index), prev, out_dim, leaky_slope);
}

void EgatEncoder::init_params(nn::ParamStore& store, const nn::CounterRng& rng) const {
  for (const EgatLayer& layer : layers_) layer.init_params(store, rng);
}

Tensor EgatEncoder::forward(const GraphView& view, const Tensor& x, const nn::ParamStore& store,
                            bool training, const nn::CounterRng& rng, uint64_t noise_scope,
                            Cache* cache) const {
  Tensor current = x;
  if (cache) {
    cache->layers.resize(layers_.size());
    cache->inputs.clear();
    cache->masks.clear();
  }
  for (size_t l = 0; l < layers_.size(); ++l) {
    if (cache) cache->inputs.push_back(current);
    Tensor y = layers_[l].forward(view, current, store, cache ? &cache->layers[l] : nullptr);
    if (l + 1 < layers_.size()) {
      Tensor mask = nn::dropout_mask(y.shape(), static_cast<Real>(dropout_), rng,
                                     nn::CounterRng::stream_of(prefix_ + ".dropout" +
                                                               std::to_string(l)),
                                     noise_scope, training);
      for (size_t i = 0; i < y.size(); ++i) y[i] *= mask[i];
      if (cache) cache->masks.push_back(std::move(mask));
    }
    current = std::move(y);
  }
  return current;
}

Tensor EgatEncoder::backward(const GraphView& view, const Cache& cache, const Tensor& dy,
                             nn::ParamStore& store) const {
  Tensor grad = dy;
  for (size_t l = layers_.size(); l-- > 0;) {
    if (l + 1 < layers_.size()) {
      const Tensor& mask = cache.masks[l];
      for (size_t i = 0; i < grad.size(); ++i) grad[i] *= mask[i];
    }
    grad = layers_[l].backward(view, cache.inputs[l], cache.layers[l], grad, store);
  }
  return grad;
}

std::vector<Real> graph_readout(const Tensor& node_matrix) {
  if (node_matrix.shape().size() != 2 || node_matrix.rows() == 0) {
    throw std::invalid_argument("graph_readout: empty node matrix");
  }
  const size_t n = node_matrix.rows();
  const size_t d = node_matrix.cols();
  std::vector<Real> out(d, Real(0));
  for (size_t i = 0; i < n; ++i) {
    const Real* row = node_matrix.row(i);
    for (size_t j = 0; j < d; ++j) out[j] += row[j];
  }
  for (Real& v : out) v /= static_cast<Real>(n);
  return out;
}

}  // namespace dvdet::model
