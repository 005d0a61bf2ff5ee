// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace dvdet::config {

// Small TOML subset, enough for flat config files: comments, [table]
// headers, bare keys, basic strings, integers, floats, booleans and flat
// arrays of those. Keys inside [a.b] flatten to "a.b.key".
struct TomlValue;
using TomlArray = std::vector<TomlValue>;

struct TomlValue {
  std::variant<bool, int64_t, double, std::string, TomlArray> data;

  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_int() const { return std::holds_alternative<int64_t>(data); }
  bool is_float() const { return std::holds_alternative<double>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_array() const { return std::holds_alternative<TomlArray>(data); }

  bool as_bool() const;
  int64_t as_int() const;
  double as_float() const;  // accepts integers too
  const std::string& as_string() const;
  const TomlArray& as_array() const;
};

using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text);
TomlTable parse_toml_file(const std::filesystem::path& path);

}  // namespace dvdet::config
