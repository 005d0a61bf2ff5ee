// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/train/kfold.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dvdet/nn/rng.hpp"

namespace dvdet::train {

std::vector<FoldSplit> kfold_split(std::span<const int> labels, size_t k, uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold_split: k must be >= 2");
  if (labels.size() < k) throw std::invalid_argument("kfold_split: fewer samples than folds");

  // Group indices by label, shuffle within each group (seeded Fisher-Yates).
  std::map<int, std::vector<size_t>> groups;
  for (size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);

  const nn::CounterRng rng(seed);
  const uint64_t stream = nn::CounterRng::stream_of("kfold");
  uint64_t counter = 0;
  for (auto& [label, indices] : groups) {
    for (size_t i = indices.size(); i > 1; --i) {
      const size_t j = rng.bits(stream, counter++) % i;
      std::swap(indices[i - 1], indices[j]);
    }
  }

  // Deal to folds with a pointer that continues across label groups, so
  // total fold sizes stay as even as possible, earlier folds largest.
  std::vector<std::vector<size_t>> folds(k);
  size_t next_fold = 0;
  for (const auto& [label, indices] : groups) {
    for (size_t idx : indices) {
      folds[next_fold].push_back(idx);
      next_fold = (next_fold + 1) % k;
    }
  }

  std::vector<FoldSplit> out(k);
  for (size_t f = 0; f < k; ++f) {
    out[f].validation = folds[f];
    std::sort(out[f].validation.begin(), out[f].validation.end());
    for (size_t g = 0; g < k; ++g) {
      if (g == f) continue;
      out[f].train.insert(out[f].train.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(out[f].train.begin(), out[f].train.end());
  }
  return out;
}

}  // namespace dvdet::train
