// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace dvdet::ast {

using ScalarValue = std::variant<bool, int64_t, double, std::string>;
std::string to_string(const ScalarValue& v);

struct AstNode {
  int id = 0;
  std::string node_type;
  // Scalar fields of the node's own JSON object. parse_ast keeps all of
  // them; filter_node_fields prunes to the retention table.
  std::map<std::string, ScalarValue> retained_fields;
  std::string source_text;    // excerpt via the src range; empty without source
  std::vector<int> children;  // ids, document order
};

struct Ast {
  std::vector<AstNode> nodes;  // document order; nodes[0] is the root
  std::unordered_map<int, size_t> index;

  const AstNode& node(int id) const;
  AstNode& node(int id);
  size_t size() const { return nodes.size(); }
};

// Parses JSON in the normalized compiler-AST shape: every object carrying a
// nodeType is a node and must also carry an integer id. When the contract
// source is supplied, each node gets its "src" range as source_text.
// Malformed input raises FormatError naming the offending node path.
Ast parse_ast(const std::string& json_text, std::string_view source = {});

// Which scalar fields survive filtering, per node type. Types absent from
// the table keep only "name".
class RetentionTable {
 public:
  static RetentionTable defaults();
  static RetentionTable from_json_file(const std::string& path);

  void set(const std::string& node_type, std::vector<std::string> fields);
  const std::vector<std::string>& fields_for(const std::string& node_type) const;

 private:
  std::map<std::string, std::vector<std::string>> table_;
  std::vector<std::string> fallback_{"name"};
};

AstNode filter_node_fields(AstNode node, const RetentionTable& retention);
void filter_ast(Ast& ast, const RetentionTable& retention);

}  // namespace dvdet::ast
