// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/embedding.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dvdet/errors.hpp"
#include "dvdet/evm/opcodes.hpp"
#include "dvdet/nn/ops.hpp"

namespace dvdet {

using nn::CounterRng;
using nn::Real;

std::vector<Real> hashed_token_vector(std::string_view token, size_t dim) {
  const CounterRng rng(kEmbeddingSeed);
  const uint64_t stream = CounterRng::stream_of(token);
  std::vector<Real> v(dim);
  for (size_t i = 0; i < dim; ++i) {
    v[i] = static_cast<Real>(rng.uniform_symmetric(stream, i, 1.0));
  }
  return v;
}

std::vector<Real> embed_node(const ast::AstNode& node, size_t dim) {
  std::vector<std::string> tokens;
  tokens.push_back(node.node_type);
  for (const auto& [key, value] : node.retained_fields) {
    tokens.push_back(key + "=" + ast::to_string(value));
  }
  std::vector<Real> out(dim, Real(0));
  for (const std::string& token : tokens) {
    std::vector<Real> tv = hashed_token_vector(token, dim);
    for (size_t i = 0; i < dim; ++i) out[i] += tv[i];
  }
  for (Real& x : out) x /= static_cast<Real>(tokens.size());
  const Real norm = nn::l2_norm(out);
  if (norm > 0) {
    for (Real& x : out) x /= norm;
  }
  return out;
}

size_t EmbeddingTable::row_for(std::string_view token) const {
  auto it = vocab.find(token);
  if (it != vocab.end()) return it->second;
  return vocab.size() + CounterRng::stream_of(token) % oov_buckets;
}

EmbeddingTable EmbeddingTable::opcode_table(size_t dim, size_t oov_buckets) {
  EmbeddingTable t;
  t.dim = dim;
  t.oov_buckets = oov_buckets;
  size_t row = 0;
  for (std::string_view mnemonic : evm::mnemonic_vocabulary()) {
    t.vocab.emplace(std::string(mnemonic), row++);
  }
  return t;
}

void EmbeddingTable::init_params(nn::ParamStore& store, const CounterRng& rng) const {
  store.create_glorot(param_name, {row_count(), dim}, rng);
}

SequenceEmbedding embed_opcode_sequence(const evm::ControlFlowPath& path,
                                        const EmbeddingTable& table,
                                        const nn::ParamStore& store) {
  if (path.opcodes.empty()) {
    throw std::invalid_argument("embed_opcode_sequence: empty path");
  }
  const nn::Tensor& rows = store.value(table.param_name);
  SequenceEmbedding out;
  out.matrix = nn::Tensor({path.opcodes.size(), table.dim});
  out.rows.reserve(path.opcodes.size());
  for (size_t t = 0; t < path.opcodes.size(); ++t) {
    const size_t row = table.row_for(path.opcodes[t]);
    out.rows.push_back(row);
    std::copy_n(rows.row(row), table.dim, out.matrix.row(t));
  }
  return out;
}

std::map<int, std::vector<Real>> load_external_embeddings(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw FormatError("cannot open embeddings file: " + file.string());
  std::map<int, std::vector<Real>> out;
  std::string line;
  size_t line_no = 0;
  size_t width = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string id_text;
    if (!std::getline(ss, id_text, '\t')) {
      throw FormatError("embeddings line " + std::to_string(line_no) + ": missing id");
    }
    int id = 0;
    try {
      id = std::stoi(id_text);
    } catch (const std::exception&) {
      throw FormatError("embeddings line " + std::to_string(line_no) + ": bad id '" + id_text +
                        "'");
    }
    std::vector<Real> values;
    std::string cell;
    while (std::getline(ss, cell, '\t')) {
      try {
        values.push_back(static_cast<Real>(std::stod(cell)));
      } catch (const std::exception&) {
        throw FormatError("embeddings line " + std::to_string(line_no) + ": bad float '" + cell +
                          "'");
      }
    }
    if (values.empty()) {
      throw FormatError("embeddings line " + std::to_string(line_no) + ": no values");
    }
    if (width == 0) {
      width = values.size();
    } else if (values.size() != width) {
      throw FormatError("embeddings line " + std::to_string(line_no) + ": width " +
                        std::to_string(values.size()) + " != " + std::to_string(width));
    }
    if (!out.emplace(id, std::move(values)).second) {
      throw FormatError("embeddings line " + std::to_string(line_no) + ": duplicate id " +
                        std::to_string(id));
    }
  }
  return out;
}

}  // namespace dvdet
