// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/nn/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "dvdet/errors.hpp"

namespace dvdet::nn {

namespace {
size_t element_count(const std::vector<size_t>& shape) {
  size_t n = 1;
  for (size_t d : shape) n *= d;
  return n;
}
}  // namespace

Tensor::Tensor(std::vector<size_t> shape)
    : shape_(std::move(shape)), data_(element_count(shape_), Real(0)) {}

Tensor::Tensor(std::vector<size_t> shape, std::vector<Real> values) : shape_(std::move(shape)) {
  if (values.size() != element_count(shape_)) {
    throw InvariantError("tensor data length does not match shape");
  }
  data_ = std::move(values);
}

void Tensor::fill(Real v) { std::fill(data_.begin(), data_.end(), v); }

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](Real v) { return std::isfinite(v); });
}

}  // namespace dvdet::nn
