// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <string>

#include "dvdet/nn/param_store.hpp"

namespace dvdet::nn {

// Central-difference gradients of a deterministic scalar function of the
// store's parameter values (run dropout in eval mode). Restores values on
// return.
std::map<std::string, Tensor> finite_diff_grad(const std::function<Real()>& f, ParamStore& store,
                                               Real eps = Real(1e-5));

// Worst relative disagreement between analytic grads in the store and the
// numeric ones. Differences below 1e-8 pass outright; otherwise
// |a - n| / max(|a|, |n|, 1e-6).
Real max_grad_rel_error(const ParamStore& store, const std::map<std::string, Tensor>& numeric);

}  // namespace dvdet::nn
