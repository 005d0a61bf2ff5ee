// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dvdet/nn/param_store.hpp"

namespace dvdet::nn {

struct AdamConfig {
  Real lr = Real(0.01);
  Real beta1 = Real(0.9);
  Real beta2 = Real(0.999);
  Real eps = Real(1e-8);
};

// Bias-corrected Adam update over every entry; gradients are zeroed
// afterwards. step is 1-based.
void adam_step(ParamStore& store, const AdamConfig& config, long step);

// Cosine annealing to zero: 0.5 * lr0 * (1 + cos(pi * step / total_steps)).
Real cosine_lr(long step, long total_steps, Real lr0);

}  // namespace dvdet::nn
