// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dvdet {

// Parses ASCII hex into bytes. Whitespace is skipped anywhere; a single
// leading "0x"/"0X" prefix is allowed. Throws FormatError naming the
// 0-based offset of the first bad character, or of the dangling nibble
// when the digit count is odd.
std::vector<uint8_t> parse_hex(std::string_view text);

std::string to_hex(std::span<const uint8_t> bytes);

}  // namespace dvdet
