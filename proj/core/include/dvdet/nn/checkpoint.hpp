// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "dvdet/nn/param_store.hpp"

namespace dvdet::nn {

// Single-file checkpoint: magic + version + dtype header, a JSON metadata
// blob, then name/shape/raw little-endian values per parameter in name
// order. Reload is bit-exact.

void save_checkpoint(const std::filesystem::path& path, const ParamStore& store,
                     const std::string& meta_json);

// Reads only the metadata blob (used to reconstruct the model config).
std::string read_checkpoint_meta(const std::filesystem::path& path);

// Loads values into an already-built store. Name or shape mismatches in
// either direction raise CheckpointError.
void load_checkpoint(const std::filesystem::path& path, ParamStore& store);

}  // namespace dvdet::nn
