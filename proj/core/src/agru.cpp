// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/model/agru.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dvdet/errors.hpp"

namespace dvdet::model {

using nn::Real;
using nn::Tensor;

GruLayer::GruLayer(std::string name, size_t in_dim, size_t hidden_dim)
    : name_(std::move(name)), in_(in_dim), hidden_(hidden_dim) {
  wz_ = name_ + ".Wz";
  wr_ = name_ + ".Wr";
  wh_ = name_ + ".Wh";
  bz_ = name_ + ".bz";
  br_ = name_ + ".br";
  bh_ = name_ + ".bh";
}

void GruLayer::init_params(nn::ParamStore& store, const nn::CounterRng& rng) const {
  const size_t concat = hidden_ + in_;
  store.create_glorot(wz_, {hidden_, concat}, rng);
  store.create_glorot(wr_, {hidden_, concat}, rng);
  store.create_glorot(wh_, {hidden_, concat}, rng);
  store.create(bz_, {hidden_});
  store.create(br_, {hidden_});
  store.create(bh_, {hidden_});
}

std::vector<std::string> GruLayer::param_names() const { return {wz_, wr_, wh_, bz_, br_, bh_}; }

std::vector<Real> GruLayer::cell(std::span<const Real> x, std::span<const Real> h_prev,
                                 const nn::ParamStore& store, StepCache* cache) const {
  if (x.size() != in_ || h_prev.size() != hidden_) {
    throw InvariantError("gru cell: dimension mismatch");
  }
  const Tensor& wz = store.value(wz_);
  const Tensor& wr = store.value(wr_);
  const Tensor& wh = store.value(wh_);
  const Tensor& bz = store.value(bz_);
  const Tensor& br = store.value(br_);
  const Tensor& bh = store.value(bh_);
  const size_t concat_dim = hidden_ + in_;

  std::vector<Real> c(concat_dim);
  std::copy(h_prev.begin(), h_prev.end(), c.begin());
  std::copy(x.begin(), x.end(), c.begin() + hidden_);

  std::vector<Real> z(hidden_), r(hidden_);
  nn::gemv(wz.data(), c.data(), z.data(), hidden_, concat_dim);
  nn::gemv(wr.data(), c.data(), r.data(), hidden_, concat_dim);
  for (size_t i = 0; i < hidden_; ++i) {
    z[i] = nn::sigmoid(z[i] + bz[i]);
    r[i] = nn::sigmoid(r[i] + br[i]);
  }

  std::vector<Real> cr(concat_dim);
  for (size_t i = 0; i < hidden_; ++i) cr[i] = r[i] * h_prev[i];
  std::copy(x.begin(), x.end(), cr.begin() + hidden_);

  std::vector<Real> h_tilde(hidden_);
  nn::gemv(wh.data(), cr.data(), h_tilde.data(), hidden_, concat_dim);
  for (size_t i = 0; i < hidden_; ++i) h_tilde[i] = std::tanh(h_tilde[i] + bh[i]);

  std::vector<Real> h(hidden_);
  for (size_t i = 0; i < hidden_; ++i) {
    h[i] = (Real(1) - z[i]) * h_prev[i] + z[i] * h_tilde[i];
  }

  if (cache) {
    cache->concat = std::move(c);
    cache->z = std::move(z);
    cache->r = std::move(r);
    cache->h_tilde = std::move(h_tilde);
    cache->h_prev.assign(h_prev.begin(), h_prev.end());
  }
  return h;
}

Tensor GruLayer::forward(const Tensor& sequence, const nn::ParamStore& store, Cache* cache) const {
  if (sequence.shape().size() != 2 || sequence.cols() != in_) {
    throw InvariantError("gru forward: sequence width mismatch");
  }
  const size_t len = sequence.rows();
  Tensor hidden({len, hidden_});
  std::vector<Real> h(hidden_, Real(0));
  if (cache) {
    cache->steps.resize(len);
    cache->input = sequence;
  }
  for (size_t t = 0; t < len; ++t) {
    h = cell({sequence.row(t), in_}, h, store, cache ? &cache->steps[t] : nullptr);
    std::copy(h.begin(), h.end(), hidden.row(t));
  }
  return hidden;
}

Tensor GruLayer::backward(const Cache& cache, const Tensor& d_hidden,
                          nn::ParamStore& store) const {
  const size_t len = cache.steps.size();
  const size_t concat_dim = hidden_ + in_;
  const Tensor& wz = store.value(wz_);
  const Tensor& wr = store.value(wr_);
  const Tensor& wh = store.value(wh_);
  Tensor& dwz = store.grad(wz_);
  Tensor& dwr = store.grad(wr_);
  Tensor& dwh = store.grad(wh_);
  Tensor& dbz = store.grad(bz_);
  Tensor& dbr = store.grad(br_);
  Tensor& dbh = store.grad(bh_);

  Tensor dx({len, in_});
  std::vector<Real> dh(hidden_, Real(0));       // carried gradient
  std::vector<Real> da_z(hidden_), da_r(hidden_), da_h(hidden_);
  std::vector<Real> dcr(concat_dim), dc(concat_dim), dc_gates(concat_dim);

  for (size_t t = len; t-- > 0;) {
    const StepCache& s = cache.steps[t];
    for (size_t i = 0; i < hidden_; ++i) dh[i] += d_hidden.at(t, i);

    // h = (1-z) h_prev + z h~
    std::vector<Real> dh_prev(hidden_, Real(0));
    for (size_t i = 0; i < hidden_; ++i) {
      const Real dz = dh[i] * (s.h_tilde[i] - s.h_prev[i]);
      const Real dht = dh[i] * s.z[i];
      dh_prev[i] = dh[i] * (Real(1) - s.z[i]);
      da_z[i] = dz * s.z[i] * (Real(1) - s.z[i]);
      da_h[i] = dht * (Real(1) - s.h_tilde[i] * s.h_tilde[i]);
    }

    // h~ = tanh(Wh [r*h_prev, x] + bh)
    std::vector<Real> cr(concat_dim);
    for (size_t i = 0; i < hidden_; ++i) cr[i] = s.r[i] * s.h_prev[i];
    std::copy(s.concat.begin() + hidden_, s.concat.end(), cr.begin() + hidden_);
    nn::ger(dwh.data(), da_h.data(), cr.data(), hidden_, concat_dim);
    for (size_t i = 0; i < hidden_; ++i) dbh[i] += da_h[i];
    nn::gemv_t(wh.data(), da_h.data(), dcr.data(), hidden_, concat_dim);
    for (size_t i = 0; i < hidden_; ++i) {
      const Real d_rh = dcr[i];
      da_r[i] = d_rh * s.h_prev[i] * s.r[i] * (Real(1) - s.r[i]);
      dh_prev[i] += d_rh * s.r[i];
    }

    // z and r share the [h_prev, x] input
    nn::ger(dwz.data(), da_z.data(), s.concat.data(), hidden_, concat_dim);
    nn::ger(dwr.data(), da_r.data(), s.concat.data(), hidden_, concat_dim);
    for (size_t i = 0; i < hidden_; ++i) {
      dbz[i] += da_z[i];
      dbr[i] += da_r[i];
    }
    nn::gemv_t(wz.data(), da_z.data(), dc.data(), hidden_, concat_dim);
    nn::gemv_t(wr.data(), da_r.data(), dc_gates.data(), hidden_, concat_dim);
    for (size_t i = 0; i < concat_dim; ++i) dc[i] += dc_gates[i];

    for (size_t i = 0; i < hidden_; ++i) dh_prev[i] += dc[i];
    Real* dxt = dx.row(t);
    for (size_t i = 0; i < in_; ++i) dxt[i] = dc[hidden_ + i] + dcr[hidden_ + i];

    dh = std::move(dh_prev);
  }
  return dx;
}

AttentionPool::AttentionPool(std::string name, size_t dim)
    : u_name_(std::move(name)), dim_(dim) {}

void AttentionPool::init_params(nn::ParamStore& store, const nn::CounterRng& rng) const {
  store.create_glorot(u_name_, {dim_}, rng);
}

std::vector<Real> AttentionPool::forward(const Tensor& hidden, const nn::ParamStore& store,
                                         Cache* cache) const {
  if (hidden.shape().size() != 2 || hidden.rows() == 0) {
    throw std::invalid_argument("attention_pool: empty hidden matrix");
  }
  if (hidden.cols() != dim_) throw InvariantError("attention_pool: width mismatch");
  const Tensor& u = store.value(u_name_);
  const size_t len = hidden.rows();

  std::vector<Real> att(len);
  for (size_t t = 0; t < len; ++t) {
    att[t] = nn::dot({hidden.row(t), dim_}, {u.data(), dim_});
  }
  nn::softmax_inplace(att);

  std::vector<Real> out(dim_, Real(0));
  for (size_t t = 0; t < len; ++t) {
    const Real* ht = hidden.row(t);
    for (size_t d = 0; d < dim_; ++d) out[d] += att[t] * ht[d];
  }
  if (cache) cache->attention = std::move(att);
  return out;
}

Tensor AttentionPool::backward(const Tensor& hidden, const Cache& cache,
                               std::span<const Real> d_out, nn::ParamStore& store) const {
  const Tensor& u = store.value(u_name_);
  Tensor& du = store.grad(u_name_);
  const size_t len = hidden.rows();
  const std::vector<Real>& att = cache.attention;

  Tensor d_hidden({len, dim_});
  std::vector<Real> datt(len), dscore(len);
  for (size_t t = 0; t < len; ++t) {
    const Real* ht = hidden.row(t);
    Real* dht = d_hidden.row(t);
    Real acc = 0;
    for (size_t d = 0; d < dim_; ++d) {
      acc += d_out[d] * ht[d];
      dht[d] = att[t] * d_out[d];
    }
    datt[t] = acc;
  }
  nn::softmax_backward(att, datt, dscore);
  for (size_t t = 0; t < len; ++t) {
    const Real* ht = hidden.row(t);
    Real* dht = d_hidden.row(t);
    for (size_t d = 0; d < dim_; ++d) {
      du[d] += dscore[t] * ht[d];
      dht[d] += dscore[t] * u[d];
    }
  }
  return d_hidden;
}

AgruEncoder::AgruEncoder(const std::string& prefix, size_t in_dim, size_t hidden_dim,
                         double dropout)
    : l0_(prefix + ".l0", in_dim, hidden_dim),
      l1_(prefix + ".l1", hidden_dim, hidden_dim),
      pool_(prefix + ".pool.u", hidden_dim),
      dropout_(dropout),
      prefix_(prefix),
      hidden_(hidden_dim) {}

void AgruEncoder::init_params(nn::ParamStore& store, const nn::CounterRng& rng) const {
  l0_.init_params(store, rng);
  l1_.init_params(store, rng);
  pool_.init_params(store, rng);
}

std::vector<Real> AgruEncoder::forward(const Tensor& sequence, const nn::ParamStore& store,
                                       bool training, const nn::CounterRng& rng,
                                       uint64_t noise_scope, Cache* cache) const {
  Cache local;
  Cache& c = cache ? *cache : local;
  Tensor h0 = l0_.forward(sequence, store, &c.l0);
  c.mask = nn::dropout_mask(h0.shape(), static_cast<Real>(dropout_), rng,
                            nn::CounterRng::stream_of(prefix_ + ".dropout"), noise_scope,
                            training);
  for (size_t i = 0; i < h0.size(); ++i) h0[i] *= c.mask[i];
  c.h1 = l1_.forward(h0, store, &c.l1);
  return pool_.forward(c.h1, store, &c.pool);
}

Tensor AgruEncoder::backward(const Cache& cache, std::span<const Real> d_out,
                             nn::ParamStore& store) const {
  Tensor dh1 = pool_.backward(cache.h1, cache.pool, d_out, store);
  Tensor dh0 = l1_.backward(cache.l1, dh1, store);
  for (size_t i = 0; i < dh0.size(); ++i) dh0[i] *= cache.mask[i];
  return l0_.backward(cache.l0, dh0, store);
}

std::vector<Real> pool_paths(const std::vector<std::vector<Real>>& vectors, PathPool mode) {
  if (vectors.empty()) throw std::invalid_argument("pool_paths: no path vectors");
  const size_t d = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != d) throw InvariantError("pool_paths: ragged path vectors");
  }
  std::vector<Real> out(d);
  if (mode == PathPool::Mean) {
    for (const auto& v : vectors) {
      for (size_t i = 0; i < d; ++i) out[i] += v[i];
    }
    for (Real& x : out) x /= static_cast<Real>(vectors.size());
  } else {
    out = vectors.front();
    for (size_t p = 1; p < vectors.size(); ++p) {
      for (size_t i = 0; i < d; ++i) out[i] = std::max(out[i], vectors[p][i]);
    }
  }
  return out;
}

}  // namespace dvdet::model
