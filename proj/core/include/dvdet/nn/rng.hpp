// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

namespace dvdet::nn {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so initialization and dropout are replayable
// regardless of evaluation order, and identical across platforms.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t bits(uint64_t stream, uint64_t counter) const;

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform(uint64_t stream, uint64_t counter) const;

  // Uniform in (-limit, limit).
  double uniform_symmetric(uint64_t stream, uint64_t counter, double limit) const;

  // FNV-1a hash; the conventional way to derive a stream id from a name.
  static uint64_t stream_of(std::string_view name);

  // Folds a substream index (epoch, step, ...) into a stream id.
  static uint64_t substream(uint64_t stream, uint64_t index);

 private:
  uint64_t seed_;
};

}  // namespace dvdet::nn
