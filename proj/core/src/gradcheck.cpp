// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "dvdet/errors.hpp"

namespace dvdet::nn {

std::map<std::string, Tensor> finite_diff_grad(const std::function<Real()>& f, ParamStore& store,
                                               Real eps) {
  std::map<std::string, Tensor> out;
  for (auto& [name, e] : store) {
    Tensor g(e.value.shape());
    for (size_t i = 0; i < e.value.size(); ++i) {
      const Real saved = e.value[i];
      e.value[i] = saved + eps;
      const Real up = f();
      e.value[i] = saved - eps;
      const Real down = f();
      e.value[i] = saved;
      g[i] = (up - down) / (2 * eps);
    }
    out.emplace(name, std::move(g));
  }
  return out;
}

Real max_grad_rel_error(const ParamStore& store, const std::map<std::string, Tensor>& numeric) {
  Real worst = 0;
  for (const auto& [name, e] : store) {
    auto it = numeric.find(name);
    if (it == numeric.end()) throw InvariantError("no numeric gradient for " + name);
    const Tensor& n = it->second;
    for (size_t i = 0; i < e.grad.size(); ++i) {
      const Real a = e.grad[i];
      const Real b = n[i];
      const Real diff = std::abs(a - b);
      if (diff < Real(1e-8)) continue;
      const Real denom = std::max({std::abs(a), std::abs(b), Real(1e-6)});
      worst = std::max(worst, diff / denom);
    }
  }
  return worst;
}

}  // namespace dvdet::nn
