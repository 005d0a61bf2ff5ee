// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dvdet::train {

struct FoldSplit {
  std::vector<size_t> train;
  std::vector<size_t> validation;
};

// Stratified k-fold over sample labels: folds are disjoint, cover everything,
// and sizes differ by at most one with earlier folds taking the remainder.
// Deterministic in (labels, k, seed).
std::vector<FoldSplit> kfold_split(std::span<const int> labels, size_t k, uint64_t seed);

}  // namespace dvdet::train
