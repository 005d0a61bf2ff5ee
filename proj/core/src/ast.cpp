// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/ast/ast.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dvdet/errors.hpp"

namespace dvdet::ast {

using nlohmann::json;

std::string to_string(const ScalarValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::string>) return x;
        else if constexpr (std::is_same_v<T, int64_t>) return std::to_string(x);
        else {
          std::ostringstream os;
          os << x;
          return os.str();
        }
      },
      v);
}

const AstNode& Ast::node(int id) const {
  auto it = index.find(id);
  if (it == index.end()) throw InvariantError("unknown AST node id " + std::to_string(id));
  return nodes[it->second];
}

AstNode& Ast::node(int id) {
  auto it = index.find(id);
  if (it == index.end()) throw InvariantError("unknown AST node id " + std::to_string(id));
  return nodes[it->second];
}

namespace {

bool is_node_object(const json& j) { return j.is_object() && j.contains("nodeType"); }

std::optional<ScalarValue> as_scalar(const json& j) {
  if (j.is_boolean()) return ScalarValue(j.get<bool>());
  if (j.is_number_integer()) return ScalarValue(j.get<int64_t>());
  if (j.is_number_float()) return ScalarValue(j.get<double>());
  if (j.is_string()) return ScalarValue(j.get<std::string>());
  return std::nullopt;
}

// "start:length:file" source ranges.
std::string slice_source(std::string_view source, const std::string& src) {
  if (source.empty()) return {};
  size_t colon1 = src.find(':');
  if (colon1 == std::string::npos) return {};
  size_t colon2 = src.find(':', colon1 + 1);
  try {
    size_t start = std::stoul(src.substr(0, colon1));
    size_t len = std::stoul(src.substr(colon1 + 1, colon2 - colon1 - 1));
    if (start >= source.size()) return {};
    return std::string(source.substr(start, std::min(len, source.size() - start)));
  } catch (const std::exception&) {
    return {};
  }
}

struct Parser {
  std::string_view source;
  Ast ast;

  // Registers the node at `j`, then scans its values for child nodes.
  int parse_node(const json& j, const std::string& path) {
    if (!j.contains("id") || !j["id"].is_number_integer()) {
      throw FormatError("AST node at " + path + " lacks an integer id");
    }
    AstNode node;
    node.id = j["id"].get<int>();
    node.node_type = j["nodeType"].get<std::string>();
    for (const auto& [key, value] : j.items()) {
      if (key == "id" || key == "nodeType") continue;
      if (auto s = as_scalar(value)) node.retained_fields.emplace(key, std::move(*s));
    }
    // Normalized ASTs keep typeString under typeDescriptions.
    if (!node.retained_fields.contains("typeString") && j.contains("typeDescriptions") &&
        j["typeDescriptions"].is_object() && j["typeDescriptions"].contains("typeString") &&
        j["typeDescriptions"]["typeString"].is_string()) {
      node.retained_fields.emplace("typeString",
                                   j["typeDescriptions"]["typeString"].get<std::string>());
    }
    if (j.contains("src") && j["src"].is_string()) {
      node.source_text = slice_source(source, j["src"].get<std::string>());
    }

    const size_t slot = ast.nodes.size();
    if (!ast.index.emplace(node.id, slot).second) {
      throw FormatError("duplicate AST node id " + std::to_string(node.id) + " at " + path);
    }
    ast.nodes.push_back(std::move(node));

    std::vector<int> children;
    for (const auto& [key, value] : j.items()) {
      if (key == "id" || key == "nodeType") continue;
      collect_children(value, path + "/" + key, children);
    }
    ast.nodes[slot].children = std::move(children);
    return ast.nodes[slot].id;
  }

  // Descends through arrays and plain property bags until node objects.
  void collect_children(const json& j, const std::string& path, std::vector<int>& out) {
    if (j.is_array()) {
      size_t i = 0;
      for (const auto& item : j) {
        collect_children(item, path + "/" + std::to_string(i++), out);
      }
    } else if (is_node_object(j)) {
      out.push_back(parse_node(j, path));
    } else if (j.is_object()) {
      for (const auto& [key, value] : j.items()) {
        collect_children(value, path + "/" + key, out);
      }
    }
  }
};

}  // namespace

Ast parse_ast(const std::string& json_text, std::string_view source) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("AST JSON malformed: ") + e.what());
  }
  if (!is_node_object(root)) {
    throw FormatError("AST root at / lacks a nodeType field");
  }
  Parser p{source, {}};
  p.parse_node(root, "");
  return std::move(p.ast);
}

RetentionTable RetentionTable::defaults() {
  RetentionTable t;
  // The contract-definition list is deliberately exact.
  t.set("ContractDefinition", {"name", "kind", "abstract", "fullyImplemented"});
  static const char* generic_types[] = {
      "SourceUnit",        "PragmaDirective",     "ImportDirective",
      "FunctionDefinition", "ModifierDefinition", "EventDefinition",
      "StructDefinition",  "EnumDefinition",      "EnumValue",
      "VariableDeclaration", "ParameterList",     "Block",
      "ExpressionStatement", "IfStatement",       "ForStatement",
      "WhileStatement",    "DoWhileStatement",    "Return",
      "EmitStatement",     "PlaceholderStatement", "VariableDeclarationStatement",
      "Assignment",        "BinaryOperation",     "UnaryOperation",
      "FunctionCall",      "FunctionCallOptions", "MemberAccess",
      "IndexAccess",       "Identifier",          "Literal",
      "TupleExpression",   "Conditional",         "NewExpression",
      "ElementaryTypeName", "ElementaryTypeNameExpression", "UserDefinedTypeName",
      "ArrayTypeName",     "Mapping",             "InheritanceSpecifier",
      "ModifierInvocation", "UsingForDirective",  "StructuredDocumentation",
  };
  for (const char* type : generic_types) {
    t.set(type, {"name", "kind", "operator", "memberName", "typeString"});
  }
  return t;
}

RetentionTable RetentionTable::from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open retention table: " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw FormatError("retention table " + path + ": " + e.what());
  }
  RetentionTable t;
  for (const auto& [type, fields] : j.items()) {
    if (!fields.is_array()) throw FormatError("retention table: " + type + " is not a list");
    std::vector<std::string> names;
    for (const auto& f : fields) names.push_back(f.get<std::string>());
    t.set(type, std::move(names));
  }
  return t;
}

void RetentionTable::set(const std::string& node_type, std::vector<std::string> fields) {
  table_[node_type] = std::move(fields);
}

const std::vector<std::string>& RetentionTable::fields_for(const std::string& node_type) const {
  auto it = table_.find(node_type);
  return it == table_.end() ? fallback_ : it->second;
}

AstNode filter_node_fields(AstNode node, const RetentionTable& retention) {
  const std::vector<std::string>& keep = retention.fields_for(node.node_type);
  std::map<std::string, ScalarValue> kept;
  for (const std::string& key : keep) {
    auto it = node.retained_fields.find(key);
    if (it != node.retained_fields.end()) kept.emplace(key, std::move(it->second));
  }
  node.retained_fields = std::move(kept);
  return node;
}

void filter_ast(Ast& ast, const RetentionTable& retention) {
  for (AstNode& node : ast.nodes) node = filter_node_fields(std::move(node), retention);
}

}  // namespace dvdet::ast
