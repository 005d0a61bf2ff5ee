// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/nn/ops.hpp"

#include <algorithm>
#include <stdexcept>

#include "dvdet/errors.hpp"

namespace dvdet::nn {

std::vector<Real> softmax(std::span<const Real> v) {
  std::vector<Real> out(v.begin(), v.end());
  softmax_inplace(out);
  return out;
}

void softmax_inplace(std::span<Real> v) {
  if (v.empty()) throw std::invalid_argument("softmax: empty input");
  Real mx = *std::max_element(v.begin(), v.end());
  Real sum = 0;
  for (Real& x : v) {
    x = std::exp(x - mx);
    sum += x;
  }
  for (Real& x : v) x /= sum;
}

void softmax_backward(std::span<const Real> y, std::span<const Real> dy, std::span<Real> dx) {
  Real inner = 0;
  for (size_t i = 0; i < y.size(); ++i) inner += y[i] * dy[i];
  for (size_t i = 0; i < y.size(); ++i) dx[i] = y[i] * (dy[i] - inner);
}

Real cross_entropy(std::span<const Real> p, size_t true_class) {
  if (true_class >= p.size()) throw std::invalid_argument("cross_entropy: class out of range");
  Real clamped = std::max(p[true_class], Real(1e-12));
  return -std::log(clamped);
}

Real cross_entropy(std::span<const Real> p, std::span<const Real> one_hot) {
  if (p.size() != one_hot.size()) {
    throw std::invalid_argument("cross_entropy: dimension mismatch");
  }
  size_t hot = p.size();
  for (size_t i = 0; i < one_hot.size(); ++i) {
    if (one_hot[i] == Real(1) && hot == p.size()) {
      hot = i;
    } else if (one_hot[i] != Real(0)) {
      throw std::invalid_argument("cross_entropy: y is not one-hot");
    }
  }
  if (hot == p.size()) throw std::invalid_argument("cross_entropy: y is not one-hot");
  return cross_entropy(p, hot);
}

Tensor dropout_mask(const std::vector<size_t>& shape, Real rate, const CounterRng& rng,
                    uint64_t stream, uint64_t counter, bool training) {
  if (rate < 0 || rate >= 1) throw std::invalid_argument("dropout: rate must be in [0, 1)");
  Tensor mask(shape);
  if (!training || rate == 0) {
    mask.fill(Real(1));
    return mask;
  }
  const Real scale = Real(1) / (Real(1) - rate);
  const uint64_t sub = CounterRng::substream(stream, counter);
  for (size_t i = 0; i < mask.size(); ++i) {
    mask[i] = rng.uniform(sub, i) < rate ? Real(0) : scale;
  }
  return mask;
}

void gemm(const Real* a, const Real* b, Real* c, size_t m, size_t k, size_t n, bool acc) {
  if (!acc) std::fill(c, c + m * n, Real(0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t p = 0; p < k; ++p) {
      const Real aip = a[i * k + p];
      if (aip == Real(0)) continue;
      const Real* brow = b + p * n;
      Real* crow = c + i * n;
      for (size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void gemv(const Real* a, const Real* x, Real* y, size_t m, size_t n, bool acc) {
  for (size_t i = 0; i < m; ++i) {
    Real s = acc ? y[i] : Real(0);
    const Real* arow = a + i * n;
    for (size_t j = 0; j < n; ++j) s += arow[j] * x[j];
    y[i] = s;
  }
}

void gemv_t(const Real* a, const Real* x, Real* y, size_t m, size_t n, bool acc) {
  if (!acc) std::fill(y, y + n, Real(0));
  for (size_t i = 0; i < m; ++i) {
    const Real xi = x[i];
    if (xi == Real(0)) continue;
    const Real* arow = a + i * n;
    for (size_t j = 0; j < n; ++j) y[j] += arow[j] * xi;
  }
}

void ger(Real* a, const Real* x, const Real* y, size_t m, size_t n) {
  for (size_t i = 0; i < m; ++i) {
    const Real xi = x[i];
    if (xi == Real(0)) continue;
    Real* arow = a + i * n;
    for (size_t j = 0; j < n; ++j) arow[j] += xi * y[j];
  }
}

}  // namespace dvdet::nn
