// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/nn/rng.hpp"

namespace dvdet::nn {

namespace {

// splitmix64 finalizer; two chained applications mix stream and counter.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t CounterRng::bits(uint64_t stream, uint64_t counter) const {
  return mix64(mix64(seed_ ^ mix64(stream)) ^ counter * 0xD1B54A32D192ED03ull);
}

double CounterRng::uniform(uint64_t stream, uint64_t counter) const {
  return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_symmetric(uint64_t stream, uint64_t counter, double limit) const {
  return (2.0 * uniform(stream, counter) - 1.0) * limit;
}

uint64_t CounterRng::stream_of(std::string_view name) {
  uint64_t h = 0xCBF29CE484222325ull;
  for (char c : name) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

uint64_t CounterRng::substream(uint64_t stream, uint64_t index) {
  return mix64(stream ^ mix64(index));
}

}  // namespace dvdet::nn
