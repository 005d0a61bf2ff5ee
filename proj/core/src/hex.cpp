// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/hex.hpp"

#include <cctype>

#include "dvdet/errors.hpp"

namespace dvdet {

namespace {

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::vector<uint8_t> parse_hex(std::string_view text) {
  std::vector<uint8_t> out;
  out.reserve(text.size() / 2);

  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i + 1 < text.size() && text[i] == '0' && (text[i + 1] == 'x' || text[i + 1] == 'X')) i += 2;

  int pending = -1;
  size_t pending_pos = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    int v = nibble(c);
    if (v < 0) {
      throw FormatError("invalid hex character '" + std::string(1, c) + "' at position " +
                        std::to_string(i));
    }
    if (pending < 0) {
      pending = v;
      pending_pos = i;
    } else {
      out.push_back(static_cast<uint8_t>((pending << 4) | v));
      pending = -1;
    }
  }
  if (pending >= 0) {
    throw FormatError("odd number of hex digits; dangling nibble at position " +
                      std::to_string(pending_pos));
  }
  return out;
}

std::string to_hex(std::span<const uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

}  // namespace dvdet
