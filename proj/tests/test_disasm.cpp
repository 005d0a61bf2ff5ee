// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "dvdet/errors.hpp"
#include "dvdet/evm/disasm.hpp"
#include "dvdet/hex.hpp"
#include "dvdet/nn/rng.hpp"

using namespace dvdet;
using namespace dvdet::evm;

TEST_CASE("hex parsing") {
  CHECK(parse_hex("6001") == std::vector<uint8_t>{0x60, 0x01});
  CHECK(parse_hex("0x6001") == std::vector<uint8_t>{0x60, 0x01});
  CHECK(parse_hex("  60 01\n") == std::vector<uint8_t>{0x60, 0x01});
  CHECK(parse_hex("") == std::vector<uint8_t>{});
  CHECK(to_hex(std::vector<uint8_t>{0xde, 0xad}) == "dead");

  CHECK_THROWS_WITH_AS(parse_hex("60g1"), doctest::Contains("position 2"), FormatError);
  CHECK_THROWS_WITH_AS(parse_hex("600"), doctest::Contains("dangling nibble"), FormatError);
}

TEST_CASE("disassemble the push-add example") {
  auto result = disassemble(parse_hex("6001600201"));
  REQUIRE(result.instructions.size() == 3);
  CHECK(result.warnings.empty());

  CHECK(result.instructions[0].mnemonic == "PUSH1");
  CHECK(result.instructions[0].offset == 0);
  CHECK(result.instructions[0].immediate == std::vector<uint8_t>{0x01});
  CHECK(result.instructions[1].mnemonic == "PUSH1");
  CHECK(result.instructions[1].offset == 2);
  CHECK(result.instructions[1].immediate == std::vector<uint8_t>{0x02});
  CHECK(result.instructions[2].mnemonic == "ADD");
  CHECK(result.instructions[2].offset == 4);
  CHECK(result.instructions[2].immediate.empty());
}

TEST_CASE("disassemble empty code") {
  auto result = disassemble({});
  CHECK(result.instructions.empty());
  CHECK(result.warnings.empty());
}

TEST_CASE("truncated PUSH immediate is zero padded and warned") {
  auto result = disassemble(parse_hex("60"));
  REQUIRE(result.instructions.size() == 1);
  CHECK(result.instructions[0].mnemonic == "PUSH1");
  CHECK(result.instructions[0].immediate == std::vector<uint8_t>{0x00});
  CHECK(result.instructions[0].is_valid);
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].offset == 0);

  // 3 of 4 immediate bytes missing
  auto wide = disassemble(parse_hex("63ff"));
  REQUIRE(wide.instructions.size() == 1);
  CHECK(wide.instructions[0].immediate == std::vector<uint8_t>{0xff, 0x00, 0x00, 0x00});
  CHECK(wide.warnings.size() == 1);
}

TEST_CASE("undefined opcode bytes decode as INVALID instructions") {
  auto result = disassemble(parse_hex("0c"));
  REQUIRE(result.instructions.size() == 1);
  CHECK_FALSE(result.instructions[0].is_valid);
  CHECK(result.instructions[0].mnemonic == "INVALID");
  CHECK(result.instructions[0].opcode == 0x0c);
  // 0xfe is the designated INVALID and counts as defined
  CHECK(disassemble(parse_hex("fe")).instructions[0].is_valid);
}

TEST_CASE("every byte is consumed exactly once") {
  auto bytes = parse_hex("60015b0c61ffff00");
  auto result = disassemble(bytes);
  size_t total = 0;
  size_t expected_offset = 0;
  for (const Instruction& ins : result.instructions) {
    CHECK(ins.offset == expected_offset);
    expected_offset += ins.encoded_size();
    total += ins.encoded_size();
  }
  CHECK(total == bytes.size());
}

TEST_CASE("strip_metadata") {
  SUBCASE("no trailer is a no-op") {
    auto code = parse_hex("6001600201");
    auto stripped = strip_metadata(code);
    CHECK(std::vector<uint8_t>(stripped.begin(), stripped.end()) == code);
  }
  SUBCASE("well-formed solidity trailer is removed") {
    // body + CBOR map {ipfs: <2 bytes>, solc: <3 bytes>} + 2-byte length
    auto body = parse_hex("6001600201");
    auto cbor = parse_hex("a2646970667342012364736f6c6343000612");
    auto code = body;
    code.insert(code.end(), cbor.begin(), cbor.end());
    code.push_back(0x00);
    code.push_back(static_cast<uint8_t>(cbor.size()));
    auto stripped = strip_metadata(code);
    CHECK(std::vector<uint8_t>(stripped.begin(), stripped.end()) == body);
  }
  SUBCASE("declared length past code size is ignored") {
    auto code = parse_hex("600160ff");  // last two bytes declare 0x60ff
    auto stripped = strip_metadata(code);
    CHECK(std::vector<uint8_t>(stripped.begin(), stripped.end()) == code);
  }
  SUBCASE("non-map trailer byte is ignored") {
    auto code = parse_hex("60016002600360040004");  // length 4 but blob starts 0x60
    auto stripped = strip_metadata(code);
    CHECK(std::vector<uint8_t>(stripped.begin(), stripped.end()) == code);
  }
}

namespace {

// Random byte strings; truncated trailing PUSH immediates are padded out so
// decode/encode is exactly inverse.
std::vector<uint8_t> random_code(const nn::CounterRng& rng, uint64_t stream, size_t max_len) {
  const size_t len = 1 + rng.bits(stream, 0) % max_len;
  std::vector<uint8_t> code(len);
  for (size_t i = 0; i < len; ++i) {
    code[i] = static_cast<uint8_t>(rng.bits(stream, i + 1));
  }
  auto result = disassemble(code);
  if (!result.warnings.empty()) {
    const Instruction& last = result.instructions.back();
    const size_t missing = last.offset + last.encoded_size() - code.size();
    code.insert(code.end(), missing, 0x00);
  }
  return code;
}

}  // namespace

TEST_CASE("round trip over random byte strings") {
  const nn::CounterRng rng(42);
  for (uint64_t trial = 0; trial < 300; ++trial) {
    auto code = random_code(rng, trial, 64);
    auto result = disassemble(code);
    CHECK(result.warnings.empty());
    CHECK(assemble(result.instructions) == code);
  }
}

TEST_CASE("decoding is deterministic") {
  auto bytes = parse_hex("60015b0c61ffff00fe");
  auto a = disassemble(bytes);
  auto b = disassemble(bytes);
  CHECK(a.instructions == b.instructions);
}

TEST_CASE("json lines output") {
  auto result = disassemble(parse_hex("600100"));
  std::string lines = to_json_lines(result);
  CHECK(lines.find("\"mnemonic\":\"PUSH1\"") != std::string::npos);
  CHECK(lines.find("\"immediate\":\"01\"") != std::string::npos);
  CHECK(lines.find("\"mnemonic\":\"STOP\"") != std::string::npos);
  CHECK(lines.back() == '\n');
}

TEST_CASE("opcode table sanity") {
  CHECK(opcode_info(0x00).mnemonic == "STOP");
  CHECK(opcode_info(0x5f).mnemonic == "PUSH0");
  CHECK(opcode_info(0x5f).immediate_size == 0);
  CHECK(opcode_info(0x60).immediate_size == 1);
  CHECK(opcode_info(0x7f).immediate_size == 32);
  CHECK(opcode_info(0xff).mnemonic == "SELFDESTRUCT");
  CHECK_FALSE(opcode_info(0x0c).defined);
  CHECK(opcode_from_mnemonic("ADD") == 0x01);
  CHECK_FALSE(opcode_from_mnemonic("NOT_AN_OP").has_value());
  CHECK(mnemonic_vocabulary().size() == 144);
}
