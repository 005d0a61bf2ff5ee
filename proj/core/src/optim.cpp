// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/nn/optim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dvdet/errors.hpp"

namespace dvdet::nn {

void adam_step(ParamStore& store, const AdamConfig& config, long step) {
  if (step < 1) throw std::invalid_argument("adam_step: step index is 1-based");
  const Real bc1 = Real(1) - std::pow(config.beta1, static_cast<Real>(step));
  const Real bc2 = Real(1) - std::pow(config.beta2, static_cast<Real>(step));
  for (auto& [name, e] : store) {
    if (!e.grad.same_shape(e.value)) {
      throw InvariantError("adam_step: missing or mismatched gradient for " + name);
    }
    for (size_t i = 0; i < e.value.size(); ++i) {
      const Real g = e.grad[i];
      e.adam_m[i] = config.beta1 * e.adam_m[i] + (Real(1) - config.beta1) * g;
      e.adam_v[i] = config.beta2 * e.adam_v[i] + (Real(1) - config.beta2) * g * g;
      const Real m_hat = e.adam_m[i] / bc1;
      const Real v_hat = e.adam_v[i] / bc2;
      e.value[i] -= config.lr * m_hat / (std::sqrt(v_hat) + config.eps);
    }
    e.grad.zero();
  }
}

Real cosine_lr(long step, long total_steps, Real lr0) {
  if (total_steps < 1) throw std::invalid_argument("cosine_lr: total_steps must be >= 1");
  if (step < 0 || step > total_steps) {
    throw std::invalid_argument("cosine_lr: step out of [0, total_steps]");
  }
  const double frac = static_cast<double>(step) / static_cast<double>(total_steps);
  return static_cast<Real>(0.5 * static_cast<double>(lr0) * (1.0 + std::cos(std::numbers::pi * frac)));
}

}  // namespace dvdet::nn
