// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace dvdet::evm {

// Instruction set pinned to the Shanghai revision. Undefined bytes decode
// as INVALID instead of erroring: deployed code routinely contains data
// regions that are never executed.

struct OpInfo {
  std::string_view mnemonic;
  uint8_t immediate_size;  // nonzero only for PUSH1..PUSH32
  bool defined;
};

inline constexpr uint8_t OP_STOP = 0x00;
inline constexpr uint8_t OP_JUMP = 0x56;
inline constexpr uint8_t OP_JUMPI = 0x57;
inline constexpr uint8_t OP_JUMPDEST = 0x5B;
inline constexpr uint8_t OP_PUSH0 = 0x5F;
inline constexpr uint8_t OP_PUSH1 = 0x60;
inline constexpr uint8_t OP_PUSH32 = 0x7F;
inline constexpr uint8_t OP_RETURN = 0xF3;
inline constexpr uint8_t OP_REVERT = 0xFD;
inline constexpr uint8_t OP_INVALID = 0xFE;
inline constexpr uint8_t OP_SELFDESTRUCT = 0xFF;

const OpInfo& opcode_info(uint8_t opcode);

constexpr bool is_push_with_immediate(uint8_t opcode) {
  return opcode >= OP_PUSH1 && opcode <= OP_PUSH32;
}

constexpr size_t push_immediate_size(uint8_t opcode) {
  return is_push_with_immediate(opcode) ? opcode - (OP_PUSH1 - 1) : 0;
}

// True for opcodes that end a basic block (undefined bytes also end one,
// which the caller checks via OpInfo::defined).
bool is_block_terminator(uint8_t opcode);

std::optional<uint8_t> opcode_from_mnemonic(std::string_view mnemonic);

// All defined mnemonics in opcode order; the bytecode-side embedding vocabulary.
const std::vector<std::string_view>& mnemonic_vocabulary();

}  // namespace dvdet::evm
