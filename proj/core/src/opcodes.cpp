// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/evm/opcodes.hpp"

#include <array>
#include <map>

namespace dvdet::evm {

namespace {

std::array<OpInfo, 256> build_table() {
  std::array<OpInfo, 256> t;
  t.fill({"INVALID", 0, false});
  auto def = [&](uint8_t op, std::string_view name) { t[op] = {name, 0, true}; };

  def(0x00, "STOP");
  def(0x01, "ADD");
  def(0x02, "MUL");
  def(0x03, "SUB");
  def(0x04, "DIV");
  def(0x05, "SDIV");
  def(0x06, "MOD");
  def(0x07, "SMOD");
  def(0x08, "ADDMOD");
  def(0x09, "MULMOD");
  def(0x0a, "EXP");
  def(0x0b, "SIGNEXTEND");
  def(0x10, "LT");
  def(0x11, "GT");
  def(0x12, "SLT");
  def(0x13, "SGT");
  def(0x14, "EQ");
  def(0x15, "ISZERO");
  def(0x16, "AND");
  def(0x17, "OR");
  def(0x18, "XOR");
  def(0x19, "NOT");
  def(0x1a, "BYTE");
  def(0x1b, "SHL");
  def(0x1c, "SHR");
  def(0x1d, "SAR");
  def(0x20, "KECCAK256");
  def(0x30, "ADDRESS");
  def(0x31, "BALANCE");
  def(0x32, "ORIGIN");
  def(0x33, "CALLER");
  def(0x34, "CALLVALUE");
  def(0x35, "CALLDATALOAD");
  def(0x36, "CALLDATASIZE");
  def(0x37, "CALLDATACOPY");
  def(0x38, "CODESIZE");
  def(0x39, "CODECOPY");
  def(0x3a, "GASPRICE");
  def(0x3b, "EXTCODESIZE");
  def(0x3c, "EXTCODECOPY");
  def(0x3d, "RETURNDATASIZE");
  def(0x3e, "RETURNDATACOPY");
  def(0x3f, "EXTCODEHASH");
  def(0x40, "BLOCKHASH");
  def(0x41, "COINBASE");
  def(0x42, "TIMESTAMP");
  def(0x43, "NUMBER");
  def(0x44, "PREVRANDAO");
  def(0x45, "GASLIMIT");
  def(0x46, "CHAINID");
  def(0x47, "SELFBALANCE");
  def(0x48, "BASEFEE");
  def(0x50, "POP");
  def(0x51, "MLOAD");
  def(0x52, "MSTORE");
  def(0x53, "MSTORE8");
  def(0x54, "SLOAD");
  def(0x55, "SSTORE");
  def(0x56, "JUMP");
  def(0x57, "JUMPI");
  def(0x58, "PC");
  def(0x59, "MSIZE");
  def(0x5a, "GAS");
  def(0x5b, "JUMPDEST");
  def(0x5f, "PUSH0");

  static constexpr std::string_view push_names[] = {
      "PUSH1",  "PUSH2",  "PUSH3",  "PUSH4",  "PUSH5",  "PUSH6",  "PUSH7",  "PUSH8",
      "PUSH9",  "PUSH10", "PUSH11", "PUSH12", "PUSH13", "PUSH14", "PUSH15", "PUSH16",
      "PUSH17", "PUSH18", "PUSH19", "PUSH20", "PUSH21", "PUSH22", "PUSH23", "PUSH24",
      "PUSH25", "PUSH26", "PUSH27", "PUSH28", "PUSH29", "PUSH30", "PUSH31", "PUSH32"};
  static constexpr std::string_view dup_names[] = {
      "DUP1", "DUP2",  "DUP3",  "DUP4",  "DUP5",  "DUP6",  "DUP7",  "DUP8",
      "DUP9", "DUP10", "DUP11", "DUP12", "DUP13", "DUP14", "DUP15", "DUP16"};
  static constexpr std::string_view swap_names[] = {
      "SWAP1", "SWAP2",  "SWAP3",  "SWAP4",  "SWAP5",  "SWAP6",  "SWAP7",  "SWAP8",
      "SWAP9", "SWAP10", "SWAP11", "SWAP12", "SWAP13", "SWAP14", "SWAP15", "SWAP16"};

  for (int i = 0; i < 32; ++i) t[0x60 + i] = {push_names[i], static_cast<uint8_t>(i + 1), true};
  for (int i = 0; i < 16; ++i) def(static_cast<uint8_t>(0x80 + i), dup_names[i]);
  for (int i = 0; i < 16; ++i) def(static_cast<uint8_t>(0x90 + i), swap_names[i]);

  def(0xa0, "LOG0");
  def(0xa1, "LOG1");
  def(0xa2, "LOG2");
  def(0xa3, "LOG3");
  def(0xa4, "LOG4");
  def(0xf0, "CREATE");
  def(0xf1, "CALL");
  def(0xf2, "CALLCODE");
  def(0xf3, "RETURN");
  def(0xf4, "DELEGATECALL");
  def(0xf5, "CREATE2");
  def(0xfa, "STATICCALL");
  def(0xfd, "REVERT");
  def(0xfe, "INVALID");
  def(0xff, "SELFDESTRUCT");
  return t;
}

const std::array<OpInfo, 256>& table() {
  static const std::array<OpInfo, 256> t = build_table();
  return t;
}

}  // namespace

const OpInfo& opcode_info(uint8_t opcode) { return table()[opcode]; }

bool is_block_terminator(uint8_t opcode) {
  switch (opcode) {
    case OP_JUMP:
    case OP_JUMPI:
    case OP_STOP:
    case OP_RETURN:
    case OP_REVERT:
    case OP_SELFDESTRUCT:
    case OP_INVALID:
      return true;
    default:
      return false;
  }
}

std::optional<uint8_t> opcode_from_mnemonic(std::string_view mnemonic) {
  static const std::map<std::string_view, uint8_t> index = [] {
    std::map<std::string_view, uint8_t> m;
    for (int op = 0; op < 256; ++op) {
      const OpInfo& info = table()[op];
      if (info.defined) m.emplace(info.mnemonic, static_cast<uint8_t>(op));
    }
    return m;
  }();
  auto it = index.find(mnemonic);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string_view>& mnemonic_vocabulary() {
  static const std::vector<std::string_view> vocab = [] {
    std::vector<std::string_view> v;
    for (int op = 0; op < 256; ++op) {
      if (table()[op].defined) v.push_back(table()[op].mnemonic);
    }
    return v;
  }();
  return vocab;
}

}  // namespace dvdet::evm
