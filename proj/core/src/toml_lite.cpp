// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/config/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "dvdet/errors.hpp"

namespace dvdet::config {

bool TomlValue::as_bool() const {
  if (!is_bool()) throw FormatError("config value is not a boolean");
  return std::get<bool>(data);
}

int64_t TomlValue::as_int() const {
  if (!is_int()) throw FormatError("config value is not an integer");
  return std::get<int64_t>(data);
}

double TomlValue::as_float() const {
  if (is_int()) return static_cast<double>(std::get<int64_t>(data));
  if (!is_float()) throw FormatError("config value is not a number");
  return std::get<double>(data);
}

const std::string& TomlValue::as_string() const {
  if (!is_string()) throw FormatError("config value is not a string");
  return std::get<std::string>(data);
}

const TomlArray& TomlValue::as_array() const {
  if (!is_array()) throw FormatError("config value is not an array");
  return std::get<TomlArray>(data);
}

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  size_t line = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }
  void skip_inline_ws() {
    while (!done() && (peek() == ' ' || peek() == '\t')) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("config line " + std::to_string(line) + ": " + what);
  }
};

void skip_to_eol(Cursor& c) {
  while (!c.done() && c.peek() != '\n') c.take();
  if (!c.done()) c.take();
}

std::string parse_basic_string(Cursor& c) {
  const char quote = c.take();  // ' or "
  std::string out;
  while (true) {
    if (c.done() || c.peek() == '\n') c.fail("unterminated string");
    char ch = c.take();
    if (ch == quote) break;
    if (quote == '"' && ch == '\\') {
      if (c.done()) c.fail("dangling escape");
      char esc = c.take();
      switch (esc) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: c.fail(std::string("unsupported escape \\") + esc);
      }
    } else {
      out += ch;
    }
  }
  return out;
}

TomlValue parse_scalar(Cursor& c);

TomlValue parse_array(Cursor& c) {
  c.take();  // [
  TomlArray items;
  while (true) {
    c.skip_inline_ws();
    while (!c.done() && c.peek() == '\n') {
      c.take();
      c.skip_inline_ws();
    }
    if (c.done()) c.fail("unterminated array");
    if (c.peek() == ']') {
      c.take();
      break;
    }
    items.push_back(parse_scalar(c));
    c.skip_inline_ws();
    if (!c.done() && c.peek() == ',') c.take();
  }
  return TomlValue{std::move(items)};
}

TomlValue parse_scalar(Cursor& c) {
  if (c.peek() == '"' || c.peek() == '\'') return TomlValue{parse_basic_string(c)};
  if (c.peek() == '[') return parse_array(c);

  std::string token;
  while (!c.done() && c.peek() != '\n' && c.peek() != '#' && c.peek() != ',' && c.peek() != ']') {
    token += c.take();
  }
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) token.pop_back();
  if (token.empty()) c.fail("missing value");
  if (token == "true") return TomlValue{true};
  if (token == "false") return TomlValue{false};

  const bool looks_float = token.find_first_of(".eE") != std::string::npos &&
                           token.find_first_not_of("+-0123456789.eE_") == std::string::npos;
  std::string digits = token;
  std::erase(digits, '_');
  try {
    if (!looks_float) {
      size_t used = 0;
      int64_t v = std::stoll(digits, &used, 0);
      if (used == digits.size()) return TomlValue{v};
    }
    size_t used = 0;
    double d = std::stod(digits, &used);
    if (used == digits.size()) return TomlValue{d};
  } catch (const std::exception&) {
  }
  c.fail("cannot parse value '" + token + "'");
}

std::string parse_key(Cursor& c) {
  std::string key;
  while (!c.done()) {
    char ch = c.peek();
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.') {
      key += c.take();
    } else {
      break;
    }
  }
  if (key.empty()) c.fail("expected a key");
  return key;
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
  TomlTable table;
  Cursor c{text};
  std::string prefix;
  while (!c.done()) {
    c.skip_inline_ws();
    if (c.done()) break;
    char ch = c.peek();
    if (ch == '\n') {
      c.take();
      continue;
    }
    if (ch == '#') {
      skip_to_eol(c);
      continue;
    }
    if (ch == '[') {
      c.take();
      std::string name = parse_key(c);
      c.skip_inline_ws();
      if (c.done() || c.peek() != ']') c.fail("unterminated table header");
      c.take();
      prefix = name + ".";
      skip_to_eol(c);
      continue;
    }
    std::string key = parse_key(c);
    c.skip_inline_ws();
    if (c.done() || c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
    c.take();
    c.skip_inline_ws();
    TomlValue value = parse_scalar(c);
    if (!table.emplace(prefix + key, std::move(value)).second) {
      c.fail("duplicate key '" + prefix + key + "'");
    }
    c.skip_inline_ws();
    if (!c.done() && c.peek() == '#') {
      skip_to_eol(c);
    } else if (!c.done()) {
      if (c.peek() != '\n') c.fail("trailing characters after value");
      c.take();
    }
  }
  return table;
}

TomlTable parse_toml_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open config: " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_toml(ss.str());
}

}  // namespace dvdet::config
