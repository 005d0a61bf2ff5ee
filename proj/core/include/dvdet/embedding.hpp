// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dvdet/ast/ast.hpp"
#include "dvdet/evm/cfg.hpp"
#include "dvdet/nn/param_store.hpp"
#include "dvdet/nn/tensor.hpp"

namespace dvdet {

// Seed constant behind every hashed fallback vector; golden test vectors
// depend on it, so it never changes.
inline constexpr uint64_t kEmbeddingSeed = 0x5EED;

// Fixed pseudo-random vector for a token, a pure function of
// (token, dim, kEmbeddingSeed). Components uniform in (-1, 1).
std::vector<nn::Real> hashed_token_vector(std::string_view token, size_t dim);

// Source-side node vector: node_type and retained fields are serialized to
// tokens, token vectors averaged, result L2-normalized. Deterministic
// stand-in for externally computed transformer embeddings.
std::vector<nn::Real> embed_node(const ast::AstNode& node, size_t dim = 768);

// Trainable token table; rows live in a ParamStore entry and receive
// gradients. Unseen tokens hash into a fixed set of OOV bucket rows.
struct EmbeddingTable {
  size_t dim = 350;
  size_t oov_buckets = 8;
  std::string param_name = "embed.opcodes";
  std::map<std::string, size_t, std::less<>> vocab;

  size_t row_count() const { return vocab.size() + oov_buckets; }
  size_t row_for(std::string_view token) const;

  // Vocabulary over every defined mnemonic of the instruction table.
  static EmbeddingTable opcode_table(size_t dim = 350, size_t oov_buckets = 8);

  // Creates the (row_count x dim) parameter, Glorot-initialized.
  void init_params(nn::ParamStore& store, const nn::CounterRng& rng) const;
};

struct SequenceEmbedding {
  nn::Tensor matrix;         // len x dim
  std::vector<size_t> rows;  // table row per step, for gradient scatter
};

// Embeds a control-flow path's mnemonic sequence. Empty paths are a domain
// error: every contract yields at least one path from entry.
SequenceEmbedding embed_opcode_sequence(const evm::ControlFlowPath& path,
                                        const EmbeddingTable& table,
                                        const nn::ParamStore& store);

// Reads "id<TAB>float..." rows of uniform width. Ragged widths or duplicate
// ids raise FormatError with the line number; empty files yield an empty map.
std::map<int, std::vector<nn::Real>> load_external_embeddings(const std::filesystem::path& file);

}  // namespace dvdet
