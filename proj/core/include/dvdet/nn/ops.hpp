// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "dvdet/nn/rng.hpp"
#include "dvdet/nn/tensor.hpp"

namespace dvdet::nn {

// --- activations -----------------------------------------------------------

inline Real sigmoid(Real x) { return Real(1) / (Real(1) + std::exp(-x)); }
inline Real leaky_relu(Real x, Real slope) { return x > 0 ? x : slope * x; }
inline Real leaky_relu_grad(Real x, Real slope) { return x > 0 ? Real(1) : slope; }
inline Real elu(Real x) { return x > 0 ? x : std::expm1(x); }
inline Real elu_grad(Real x) { return x > 0 ? Real(1) : std::exp(x); }

// --- softmax / loss --------------------------------------------------------

// Max-subtracted softmax; components positive and summing to 1.
std::vector<Real> softmax(std::span<const Real> v);
void softmax_inplace(std::span<Real> v);

// Backward of y = softmax(x): dx_i = y_i * (dy_i - sum_k y_k dy_k).
void softmax_backward(std::span<const Real> y, std::span<const Real> dy, std::span<Real> dx);

// -log p[true class]; p clamped below at 1e-12. The one-hot overload checks
// that y is an exact one-hot vector of matching length.
Real cross_entropy(std::span<const Real> p, size_t true_class);
Real cross_entropy(std::span<const Real> p, std::span<const Real> one_hot);

// --- dropout ----------------------------------------------------------------

// Inverted-dropout mask: entries are 0 or 1/(1-rate). Identity in eval mode.
Tensor dropout_mask(const std::vector<size_t>& shape, Real rate, const CounterRng& rng,
                    uint64_t stream, uint64_t counter, bool training);

// --- small dense kernels ----------------------------------------------------

// C[m x n] = A[m x k] * B[k x n]; accumulates when acc is true.
void gemm(const Real* a, const Real* b, Real* c, size_t m, size_t k, size_t n, bool acc = false);
// y[m] = A[m x n] * x[n] (+)
void gemv(const Real* a, const Real* x, Real* y, size_t m, size_t n, bool acc = false);
// y[n] = A^T[m x n] * x[m] (+)
void gemv_t(const Real* a, const Real* x, Real* y, size_t m, size_t n, bool acc = false);
// A[m x n] += x[m] * y[n]^T
void ger(Real* a, const Real* x, const Real* y, size_t m, size_t n);

inline Real dot(std::span<const Real> a, std::span<const Real> b) {
  Real s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Real l2_norm(std::span<const Real> v) { return std::sqrt(dot(v, v)); }

}  // namespace dvdet::nn
