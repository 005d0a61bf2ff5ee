// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace dvdet::nn {

#ifdef DVDET_SINGLE_PRECISION
using Real = float;
#else
using Real = double;
#endif

// Dense row-major tensor. Value-semantic; shapes are fixed at construction.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<size_t> shape);
  Tensor(std::vector<size_t> shape, std::vector<Real> values);

  static Tensor zeros(std::vector<size_t> shape) { return Tensor(std::move(shape)); }

  const std::vector<size_t>& shape() const { return shape_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  size_t rows() const {
    assert(shape_.size() == 2);
    return shape_[0];
  }
  size_t cols() const {
    assert(shape_.size() == 2);
    return shape_[1];
  }

  Real* data() { return data_.data(); }
  const Real* data() const { return data_.data(); }
  Real& operator[](size_t i) {
    assert(i < data_.size());
    return data_[i];
  }
  Real operator[](size_t i) const {
    assert(i < data_.size());
    return data_[i];
  }
  Real& at(size_t r, size_t c) {
    assert(shape_.size() == 2 && r < shape_[0] && c < shape_[1]);
    return data_[r * shape_[1] + c];
  }
  Real at(size_t r, size_t c) const {
    assert(shape_.size() == 2 && r < shape_[0] && c < shape_[1]);
    return data_[r * shape_[1] + c];
  }
  Real* row(size_t r) { return data_.data() + r * shape_.back(); }
  const Real* row(size_t r) const { return data_.data() + r * shape_.back(); }

  void fill(Real v);
  void zero() { fill(Real(0)); }
  bool all_finite() const;
  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  bool operator==(const Tensor&) const = default;

 private:
  std::vector<size_t> shape_;
  std::vector<Real> data_;
};

}  // namespace dvdet::nn
