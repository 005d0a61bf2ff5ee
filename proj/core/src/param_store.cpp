// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/nn/param_store.hpp"

#include <cmath>

#include "dvdet/errors.hpp"

namespace dvdet::nn {

Tensor& ParamStore::create(const std::string& name, std::vector<size_t> shape) {
  auto [it, inserted] = entries_.try_emplace(name);
  if (!inserted) throw InvariantError("duplicate parameter name: " + name);
  ParamEntry& e = it->second;
  e.value = Tensor(shape);
  e.grad = Tensor(shape);
  e.adam_m = Tensor(shape);
  e.adam_v = Tensor(std::move(shape));
  return e.value;
}

Tensor& ParamStore::create_glorot(const std::string& name, std::vector<size_t> shape,
                                  const CounterRng& rng) {
  const size_t fan_out = shape.empty() ? 1 : shape[0];
  const size_t fan_in = shape.size() >= 2 ? shape[1] : 1;
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Tensor& v = create(name, std::move(shape));
  const uint64_t stream = CounterRng::stream_of(name);
  for (size_t i = 0; i < v.size(); ++i) {
    v[i] = static_cast<Real>(rng.uniform_symmetric(stream, i, limit));
  }
  return v;
}

ParamEntry& ParamStore::entry(const std::string& name) {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw InvariantError("unknown parameter: " + name);
  return it->second;
}

const ParamEntry& ParamStore::entry(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw InvariantError("unknown parameter: " + name);
  return it->second;
}

void ParamStore::zero_grads() {
  for (auto& [name, e] : entries_) e.grad.zero();
}

size_t ParamStore::parameter_count() const {
  size_t n = 0;
  for (const auto& [name, e] : entries_) n += e.value.size();
  return n;
}

std::vector<std::string> ParamStore::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, e] : entries_) out.push_back(name);
  return out;
}

}  // namespace dvdet::nn
