// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dvdet/evm/opcodes.hpp"

namespace dvdet::evm {

struct Instruction {
  size_t offset = 0;
  std::string_view mnemonic;       // backed by the static opcode table
  uint8_t opcode = 0;
  std::vector<uint8_t> immediate;  // present iff opcode is PUSH1..PUSH32
  bool is_valid = true;            // false for undefined opcode bytes

  size_t encoded_size() const { return 1 + immediate.size(); }
  bool operator==(const Instruction&) const = default;
};

struct DisasmWarning {
  size_t offset = 0;
  std::string message;
};

struct Disassembly {
  std::vector<Instruction> instructions;
  std::vector<DisasmWarning> warnings;  // PUSH immediates running past end-of-code
};

// Decodes every byte exactly once. A PUSH whose immediate runs past the end
// of code gets a zero-padded immediate plus a warning; undefined bytes decode
// as INVALID instructions with is_valid=false.
Disassembly disassemble(std::span<const uint8_t> code);

// Re-encodes a decoded stream. Inverse of disassemble for all inputs that
// produced no truncation warnings.
std::vector<uint8_t> assemble(std::span<const Instruction> instructions);

// Drops a trailing Solidity CBOR metadata blob when the declared 2-byte
// length fits and the blob starts with a CBOR map header; otherwise returns
// the input unchanged. Never fails.
std::span<const uint8_t> strip_metadata(std::span<const uint8_t> code);

// One JSON object per line: offset / mnemonic / opcode / immediate (hex) / valid.
std::string to_json_lines(const Disassembly& result);

}  // namespace dvdet::evm
