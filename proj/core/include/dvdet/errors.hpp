// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dvdet {

// Exit-code mapping used by the CLI: FormatError -> 2, CheckpointError -> 3,
// any other escaping exception -> 4.

/// Malformed external input (hex text, JSON, manifests, config files).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable, corrupt, or shape-incompatible checkpoint file.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A broken internal contract (dimension mismatch, invalid tier value, ...).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dvdet
