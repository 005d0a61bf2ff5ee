// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/evm/disasm.hpp"

#include <nlohmann/json.hpp>

#include "dvdet/hex.hpp"

namespace dvdet::evm {

Disassembly disassemble(std::span<const uint8_t> code) {
  Disassembly out;
  out.instructions.reserve(code.size());
  size_t i = 0;
  while (i < code.size()) {
    const uint8_t op = code[i];
    const OpInfo& info = opcode_info(op);
    Instruction ins;
    ins.offset = i;
    ins.opcode = op;
    ins.mnemonic = info.mnemonic;
    ins.is_valid = info.defined;
    const size_t imm = info.immediate_size;
    if (imm > 0) {
      const size_t available = code.size() - i - 1;
      ins.immediate.assign(imm, 0);
      const size_t take = std::min(imm, available);
      std::copy_n(code.begin() + i + 1, take, ins.immediate.begin());
      if (take < imm) {
        out.warnings.push_back({i, std::string(info.mnemonic) + " at offset " + std::to_string(i) +
                                       " truncated: immediate zero-padded by " +
                                       std::to_string(imm - take) + " byte(s)"});
      }
      i += 1 + take;
    } else {
      i += 1;
    }
    out.instructions.push_back(std::move(ins));
  }
  return out;
}

std::vector<uint8_t> assemble(std::span<const Instruction> instructions) {
  std::vector<uint8_t> out;
  for (const Instruction& ins : instructions) {
    out.push_back(ins.opcode);
    out.insert(out.end(), ins.immediate.begin(), ins.immediate.end());
  }
  return out;
}

std::span<const uint8_t> strip_metadata(std::span<const uint8_t> code) {
  if (code.size() < 2) return code;
  const size_t declared = (static_cast<size_t>(code[code.size() - 2]) << 8) | code[code.size() - 1];
  if (declared == 0 || declared + 2 > code.size()) return code;
  // Solidity emits a small CBOR map ({ipfs|bzzr0|bzzr1: ..., solc: ...});
  // require a map header so arbitrary trailing bytes are not eaten.
  const uint8_t first = code[code.size() - 2 - declared];
  if ((first >> 5) != 5) return code;
  return code.first(code.size() - declared - 2);
}

std::string to_json_lines(const Disassembly& result) {
  std::string out;
  for (const Instruction& ins : result.instructions) {
    nlohmann::json j{{"offset", ins.offset},
                     {"mnemonic", std::string(ins.mnemonic)},
                     {"opcode", ins.opcode},
                     {"valid", ins.is_valid}};
    if (!ins.immediate.empty()) j["immediate"] = to_hex(ins.immediate);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace dvdet::evm
