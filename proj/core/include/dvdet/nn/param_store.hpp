// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dvdet/nn/rng.hpp"
#include "dvdet/nn/tensor.hpp"

namespace dvdet::nn {

struct ParamEntry {
  Tensor value;
  Tensor grad;
  Tensor adam_m;
  Tensor adam_v;
};

// Named trainable parameters with gradient and optimizer-state slots.
// Single writer during training; map order makes serialization stable.
class ParamStore {
 public:
  // Creates a zero-initialized entry; duplicate names are an error.
  Tensor& create(const std::string& name, std::vector<size_t> shape);

  // Creates an entry with Glorot-style uniform init: limit sqrt(6/(fan_in+fan_out)),
  // fan dims taken from a 2-d shape (vectors use fan_out=1).
  Tensor& create_glorot(const std::string& name, std::vector<size_t> shape,
                        const CounterRng& rng);

  bool contains(const std::string& name) const { return entries_.contains(name); }
  ParamEntry& entry(const std::string& name);
  const ParamEntry& entry(const std::string& name) const;
  Tensor& value(const std::string& name) { return entry(name).value; }
  const Tensor& value(const std::string& name) const { return entry(name).value; }
  Tensor& grad(const std::string& name) { return entry(name).grad; }

  void zero_grads();
  size_t parameter_count() const;
  std::vector<std::string> names() const;

  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, ParamEntry> entries_;
};

}  // namespace dvdet::nn
